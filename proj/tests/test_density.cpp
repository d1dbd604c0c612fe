#include "doctest.h"

#include "adkde/density.hpp"
#include "adkde/numeric.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>

using namespace adkde;

namespace {

std::vector<double> draw_sorted(const Density& model, std::int64_t n, std::uint64_t seed) {
    const SampleMatrix m = sample(model, n, seed);
    std::vector<double> xs(static_cast<std::size_t>(n));
    for (std::int64_t r = 0; r < n; ++r) xs[static_cast<std::size_t>(r)] = m.at(r, 0);
    std::sort(xs.begin(), xs.end());
    return xs;
}

double chi_square_p(const std::vector<double>& observed, const std::vector<double>& expected) {
    double stat = 0.0;
    for (std::size_t b = 0; b < observed.size(); ++b) {
        const double diff = observed[b] - expected[b];
        stat += diff * diff / expected[b];
    }
    boost::math::chi_squared_distribution<double> dist(static_cast<double>(observed.size() - 1));
    return 1.0 - boost::math::cdf(dist, stat);
}

} // namespace

TEST_SUITE("density") {

TEST_CASE("benchmark marginal pointwise values") {
    CHECK(bench_marginal_eval(0.5) == doctest::Approx(16.0 / 15.0));
    CHECK(bench_marginal_eval(1.0 / 16.0) == doctest::Approx((64.0 / 15.0) * 0.25));
    CHECK(bench_marginal_eval(-0.1) == 0.0);
    CHECK(bench_marginal_eval(1.1) == 0.0);
    for (double t : {0.01, 0.13, 0.3, 0.77, 0.99})
        CHECK(bench_marginal_eval(t) >= 0.0);
}

TEST_CASE("benchmark marginal integrates to one") {
    const double total = integrate(bench_marginal_eval, 0.0, 1.0, 1e-12);
    CHECK(std::abs(total - 1.0) <= 1e-9);
}

TEST_CASE("cdf matches the quadrature of the density") {
    for (double t : {0.05, 1.0 / 8.0, 0.2, 0.25, 0.5, 0.75, 0.9, 1.0}) {
        const double quad = integrate(bench_marginal_eval, 0.0, t, 1e-12);
        CHECK(bench_marginal_cdf(t) == doctest::Approx(quad).epsilon(1e-10));
    }
    CHECK(bench_marginal_cdf(0.0) == 0.0);
    CHECK(bench_marginal_cdf(1.0) == doctest::Approx(1.0));
    CHECK(bench_marginal_cdf(-1.0) == 0.0);
    CHECK(bench_marginal_cdf(2.0) == 1.0);
}

TEST_CASE("quantile inverts the cdf on every segment") {
    for (double u = 0.005; u < 1.0; u += 0.005) {
        const double t = bench_marginal_quantile(u);
        CHECK(bench_marginal_cdf(t) == doctest::Approx(u).epsilon(1e-9));
    }
    for (double t = 0.01; t < 1.0; t += 0.01)
        CHECK(bench_marginal_quantile(bench_marginal_cdf(t)) == doctest::Approx(t).epsilon(1e-9));
}

TEST_CASE("product structure of the d-dimensional models") {
    const auto m2 = make_example1(2);
    CHECK(m2->dim() == 2);
    CHECK(m2->eval({0.5, 0.25}) ==
          doctest::Approx(bench_marginal_eval(0.5) * bench_marginal_eval(0.25)));

    const auto g1 = make_gaussian(1.0, 1);
    CHECK(g1->eval({0.0}) == doctest::Approx(1.0 / std::sqrt(2.0 * 3.14159265358979323846)));
    const auto g2 = make_gaussian(2.0, 2);
    const double phi = [](double x) {
        return std::exp(-0.5 * x * x) / std::sqrt(2.0 * 3.14159265358979323846);
    }(0.5);
    CHECK(g2->eval({1.0, 1.0}) == doctest::Approx(0.25 * phi * phi));
}

TEST_CASE("product of marginals rejects non-univariate parts") {
    std::vector<std::unique_ptr<Density>> parts;
    parts.push_back(make_example1(1));
    parts.push_back(make_gaussian(1.0, 2));
    CHECK_THROWS(make_product(std::move(parts)));
}

TEST_CASE("sampling is deterministic per (seed, stream)") {
    const auto model = make_example1(2);
    const SampleMatrix a = sample(*model, 50, 7, 3);
    const SampleMatrix b = sample(*model, 50, 7, 3);
    const SampleMatrix c = sample(*model, 50, 7, 4);
    bool same = true, differs = false;
    for (std::int64_t r = 0; r < 50; ++r)
        for (int j = 0; j < 2; ++j) {
            same = same && a.at(r, j) == b.at(r, j);
            differs = differs || a.at(r, j) != c.at(r, j);
        }
    CHECK(same);
    CHECK(differs);
}

TEST_CASE("empirical cdf stays in the KS band") {
    const std::int64_t n = 100000;
    const auto xs = draw_sorted(*make_example1(1), n, 2026);
    double d = 0.0;
    for (std::int64_t i = 0; i < n; ++i) {
        const double F = bench_marginal_cdf(xs[static_cast<std::size_t>(i)]);
        d = std::max(d, std::abs(F - static_cast<double>(i + 1) / n));
        d = std::max(d, std::abs(F - static_cast<double>(i) / n));
    }
    CHECK(d <= 1.5 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("histogram chi-square: benchmark sampler matches its evaluator") {
    const std::int64_t n = 100000;
    const auto xs = draw_sorted(*make_example1(1), n, 31337);
    const int bins = 50;
    std::vector<double> observed(bins, 0.0), expected(bins, 0.0);
    for (double x : xs) {
        int b = static_cast<int>(x * bins);
        b = std::clamp(b, 0, bins - 1);
        observed[static_cast<std::size_t>(b)] += 1.0;
    }
    for (int b = 0; b < bins; ++b)
        expected[static_cast<std::size_t>(b)] =
            n * (bench_marginal_cdf((b + 1.0) / bins) - bench_marginal_cdf(b / static_cast<double>(bins)));
    CHECK(chi_square_p(observed, expected) > 0.001);
}

TEST_CASE("histogram chi-square: gaussian sampler matches its evaluator") {
    const std::int64_t n = 100000;
    const auto xs = draw_sorted(*make_gaussian(1.0, 1), n, 90210);
    const int bins = 50;
    boost::math::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> edges;  // equal-probability bins
    for (int b = 1; b < bins; ++b)
        edges.push_back(boost::math::quantile(normal, b / static_cast<double>(bins)));
    std::vector<double> observed(bins, 0.0), expected(bins, static_cast<double>(n) / bins);
    for (double x : xs) {
        const auto it = std::upper_bound(edges.begin(), edges.end(), x);
        observed[static_cast<std::size_t>(it - edges.begin())] += 1.0;
    }
    CHECK(chi_square_p(observed, expected) > 0.001);
}

} // TEST_SUITE
