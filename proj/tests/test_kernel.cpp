#include "doctest.h"

#include "adkde/kernel.hpp"
#include "adkde/numeric.hpp"

#include <cmath>
#include <random>

using namespace adkde;

namespace {

// Independent oracle: the binomial sum written out directly against the raw base.
double ul_oracle(int l, double z) {
    double a = 1.0 / (2.0 * l);
    auto u = [a](double t) { return (1.0 / a) * std::max(0.0, 1.0 - std::abs(t) / a); };
    auto binom = [](int n, int k) {
        double r = 1;
        for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
        return r;
    };
    double s = 0;
    for (int i = 1; i <= l; ++i)
        s += binom(l, i) * ((i % 2) ? 1.0 : -1.0) * (1.0 / i) * u(z / i);
    return s;
}

// Independent oracle: composite Simpson with a fixed fine grid.
double moment_oracle(const HigherOrderKernel& K, int k, int n = 1 << 18) {
    double lo = -0.5, hi = 0.5, h = (hi - lo) / n, s = 0;
    for (int i = 0; i < n; ++i) {
        double a = lo + i * h, b = a + h, m = 0.5 * (a + b);
        auto f = [&](double z) { return std::pow(z, k) * K(z); };
        s += (b - a) / 6 * (f(a) + 4 * f(m) + f(b));
    }
    return s;
}

} // namespace

TEST_SUITE("kernel") {

TEST_CASE("default base") {
    BaseKernel b = make_default_base(2);
    CHECK(b.u(0.0) == doctest::Approx(4.0));            // 1/a, a=1/4
    CHECK(b.u(0.3) == 0.0);                             // outside [-1/4,1/4]
    CHECK(b.u(0.1) == b.u(-0.1));
    CHECK(b.lipschitz_bound == doctest::Approx(16.0));
    BaseKernel b3 = make_default_base(3);
    double integral = integrate([&](double z) { return b3.u(z); }, -0.5, 0.5, 1e-14);
    CHECK(integral == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS(make_default_base(1));
}

TEST_CASE("eval_ul matches the hand oracle") {
    for (int l : {2, 3, 4}) {
        HigherOrderKernel K{make_default_base(l)};
        CHECK(eval_ul(K, 0.6) == 0.0);
        for (double z : {0.0, 0.01, -0.13, 0.24999, 0.25, 0.3, -0.49, 0.5})
            CHECK(eval_ul(K, z) == doctest::Approx(ul_oracle(l, z)).epsilon(1e-13));
    }
    HigherOrderKernel K2{make_default_base(2)};
    CHECK(eval_ul(K2, 0.0) == doctest::Approx(6.0));    // 2u(0) - u(0)/2 = 1.5*4
}

TEST_CASE("exact constants for the triangular family") {
    HigherOrderKernel K{make_default_base(2)};
    CHECK(K.sup_norm() == doctest::Approx(6.0));
    CHECK(K.l1_norm() == doctest::Approx(11.0 / 7.0).epsilon(1e-12));
    CHECK(K.lipschitz() == doctest::Approx(28.0));
    CHECK(K.l1_norm() >= 1.0);
    for (int l : {3, 4}) {
        HigherOrderKernel Kl{make_default_base(l)};
        CHECK(Kl.l1_norm() >= 1.0);
        CHECK(Kl.sup_norm() >= std::abs(Kl(0.0)));
    }
}

TEST_CASE("moments vanish to order l-1") {
    for (int l : {2, 3, 4}) {
        HigherOrderKernel K{make_default_base(l)};
        CHECK(moment(K, 0, 64) == doctest::Approx(1.0).epsilon(1e-10));
        for (int k = 1; k < l; ++k) {
            CHECK(std::abs(moment(K, k, 64)) <= 1e-8);
            CHECK(std::abs(moment_oracle(K, k)) <= 1e-6);
        }
        // first non-vanishing moment really is nonzero
        CHECK(std::abs(moment_oracle(K, l + (l % 2))) > 1e-4);
    }
    HigherOrderKernel K3{make_default_base(3)};
    CHECK(moment(K3, 2, 64) == doctest::Approx(0.0));
    CHECK_THROWS(moment(K3, 2, 8));
}

TEST_CASE("empirical Lipschitz bound") {
    std::mt19937_64 gen(12345);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int l : {2, 3, 4}) {
        HigherOrderKernel K{make_default_base(l)};
        // The constant is exact for the piecewise-linear construction, so two
        // points on the steepest segment reach it with equality; allow only
        // the rounding of the evaluations themselves.
        const double slack = 1e-12 * (1.0 + K.lipschitz());
        for (int t = 0; t < 10000; ++t) {
            double x = unif(gen), y = unif(gen);
            CHECK(std::abs(K(x) - K(y)) <= K.lipschitz() * std::abs(x - y) + slack);
        }
    }
}

TEST_CASE("product kernel") {
    HigherOrderKernel K{make_default_base(2)};
    CHECK(product_kernel_eval(K, {1.0}, {0.0}) == doctest::Approx(K(0.0)));
    CHECK(product_kernel_eval(K, {0.5, 0.5}, {0.0, 0.0}) ==
          doctest::Approx(4.0 * K(0.0) * K(0.0)));
    CHECK(product_kernel_eval(K, {0.5, 1.0}, {0.3, 0.0}) == 0.0);  // |0.3/0.5|>1/2
    CHECK_THROWS(product_kernel_eval(K, {0.0}, {0.0}));
    CHECK_THROWS(product_kernel_eval(K, {-1.0}, {0.0}));
}

TEST_CASE("linear profile agrees with evaluation") {
    for (int l : {2, 3, 4}) {
        HigherOrderKernel K{make_default_base(l)};
        REQUIRE(K.has_linear_profile());
        for (double z : {0.0, 0.03, -0.2, 0.26, 0.49, 0.77}) {
            double s = 0;
            for (size_t i = 0; i < K.profile_coeff().size(); ++i)
                s += K.profile_coeff()[i] *
                     std::max(0.0, 1.0 - std::abs(z) * K.profile_slope()[i]);
            CHECK(s == doctest::Approx(K(z)).epsilon(1e-13));
        }
    }
}

} // TEST_SUITE
