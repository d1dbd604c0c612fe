#include "adkde/simd/kernel_sum.hpp"

#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

using namespace adkde::simd;

namespace {

struct PlanData {
    KernelSumPlan plan;
    std::vector<std::vector<double>> cols;
};

PlanData random_plan(std::mt19937_64& rng, std::int64_t n, int ncoord, int nterm,
                     double spread) {
    PlanData pd;
    pd.plan.n = n;
    pd.plan.ncoord = ncoord;
    pd.plan.nterm = nterm;
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> pos(0.2, 8.0);
    for (int t = 0; t < nterm; ++t)
        pd.plan.coeff[t] = unit(rng) * 4.0;
    pd.cols.resize(static_cast<std::size_t>(ncoord));
    for (int c = 0; c < ncoord; ++c) {
        auto& col = pd.cols[static_cast<std::size_t>(c)];
        col.resize(static_cast<std::size_t>(n));
        for (auto& v : col) v = unit(rng) * spread;
        pd.plan.coord[c].col = col.data();
        pd.plan.coord[c].x0 = unit(rng) * 0.5;
        for (int t = 0; t < nterm; ++t)
            pd.plan.coord[c].slope[t] = pos(rng);
    }
    return pd;
}

// Plain-summation oracle: same math, naive accumulation order.
KernelSumResult naive_sum(const KernelSumPlan& p) {
    KernelSumResult r;
    for (std::int64_t j = 0; j < p.n; ++j) {
        double prod = 1.0;
        for (int c = 0; c < p.ncoord; ++c) {
            const double az = std::fabs(p.coord[c].col[j] - p.coord[c].x0);
            double k = 0.0;
            for (int t = 0; t < p.nterm; ++t) {
                const double arg = 1.0 - az * p.coord[c].slope[t];
                k += p.coeff[t] * (arg > 0.0 ? arg : 0.0);
            }
            prod *= k;
        }
        r.sum += prod;
        r.abs_sum += std::fabs(prod);
    }
    return r;
}

std::vector<Backend> usable_backends() {
    std::vector<Backend> out;
    for (Backend b : compiled_backends())
        if (backend_available(b)) out.push_back(b);
    return out;
}

KernelSumResult run_backend(Backend b, const KernelSumPlan& p) {
    switch (b) {
#if defined(ADKDE_HAVE_AVX2)
        case Backend::avx2: return kernel_sum_avx2(p);
#endif
#if defined(ADKDE_HAVE_NEON)
        case Backend::neon: return kernel_sum_neon(p);
#endif
        default: return kernel_sum_scalar(p);
    }
}

} // namespace

TEST_SUITE("simd") {

TEST_CASE("scalar matches a plain-summation oracle") {
    std::mt19937_64 rng(2024);
    for (std::int64_t n : {0, 1, 5, 64, 1000}) {
        auto pd = random_plan(rng, n, 2, 3, 1.5);
        auto a = kernel_sum_scalar(pd.plan);
        auto b = naive_sum(pd.plan);
        CHECK(a.sum == doctest::Approx(b.sum).epsilon(1e-12));
        CHECK(a.abs_sum == doctest::Approx(b.abs_sum).epsilon(1e-12));
        CHECK(a.abs_sum >= std::fabs(a.sum) - 1e-12 * a.abs_sum);
    }
}

TEST_CASE("all compiled-and-usable backends agree bit for bit") {
    auto backends = usable_backends();
    REQUIRE(!backends.empty());
    std::mt19937_64 rng(77);
    // Lengths straddle the 4-row vector width to exercise every tail shape.
    for (std::int64_t n : {0, 1, 2, 3, 4, 5, 6, 7, 8, 15, 16, 17, 33, 64, 67, 257}) {
        for (int ncoord : {1, 2, 3}) {
            for (int nterm : {2, 4}) {
                auto pd = random_plan(rng, n, ncoord, nterm, 2.0);
                auto ref = kernel_sum_scalar(pd.plan);
                for (Backend b : backends) {
                    auto got = run_backend(b, pd.plan);
                    INFO("n=", n, " ncoord=", ncoord, " nterm=", nterm,
                         " backend=", backend_name(b));
                    CHECK(got.sum == ref.sum);
                    CHECK(got.abs_sum == ref.abs_sum);
                }
            }
        }
    }
}

TEST_CASE("backends agree when the early exit fires") {
    auto backends = usable_backends();
    std::mt19937_64 rng(501);
    // Rows far outside the kernel support make every per-row product zero.
    auto pd = random_plan(rng, 97, 3, 3, 1.0);
    for (auto& col : pd.cols)
        for (auto& v : col) v += 50.0;
    auto ref = kernel_sum_scalar(pd.plan);
    CHECK(ref.sum == 0.0);
    for (Backend b : backends) {
        auto got = run_backend(b, pd.plan);
        CHECK(got.sum == ref.sum);
        CHECK(got.abs_sum == ref.abs_sum);
    }
    // Mixed case: some rows zero out mid-product, some survive.
    auto mixed = random_plan(rng, 203, 2, 3, 1.0);
    for (std::size_t j = 0; j < mixed.cols[0].size(); j += 3)
        mixed.cols[0][j] += 50.0;
    ref = kernel_sum_scalar(mixed.plan);
    for (Backend b : backends) {
        auto got = run_backend(b, mixed.plan);
        CHECK(got.sum == ref.sum);
        CHECK(got.abs_sum == ref.abs_sum);
    }
}

TEST_CASE("backends agree with centers pinned to kernel breakpoints") {
    auto backends = usable_backends();
    std::mt19937_64 rng(9);
    auto pd = random_plan(rng, 130, 2, 3, 0.5);
    // Place data exactly at clip boundaries: az * slope == 1.
    for (int c = 0; c < pd.plan.ncoord; ++c) {
        pd.plan.coord[c].x0 = 0.0;
        for (std::size_t j = 0; j < pd.cols[static_cast<std::size_t>(c)].size(); j += 2)
            pd.cols[static_cast<std::size_t>(c)][j] = 1.0 / pd.plan.coord[c].slope[0];
    }
    auto ref = kernel_sum_scalar(pd.plan);
    for (Backend b : backends) {
        auto got = run_backend(b, pd.plan);
        CHECK(got.sum == ref.sum);
        CHECK(got.abs_sum == ref.abs_sum);
    }
}

TEST_CASE("dispatch routes to the forced backend") {
    auto backends = usable_backends();
    std::mt19937_64 rng(31);
    auto pd = random_plan(rng, 41, 2, 3, 1.5);
    Backend before = active_backend();
    for (Backend b : backends) {
        force_backend(b);
        CHECK(active_backend() == b);
        auto via_dispatch = kernel_sum(pd.plan);
        auto direct = run_backend(b, pd.plan);
        CHECK(via_dispatch.sum == direct.sum);
        CHECK(via_dispatch.abs_sum == direct.abs_sum);
    }
    force_backend(before);
}

TEST_CASE("forcing an unavailable backend throws") {
#if !defined(ADKDE_HAVE_AVX2)
    CHECK_THROWS(force_backend(Backend::avx2));
#endif
#if !defined(ADKDE_HAVE_NEON)
    CHECK_THROWS(force_backend(Backend::neon));
#endif
    CHECK(backend_available(Backend::scalar));
}

} // TEST_SUITE
