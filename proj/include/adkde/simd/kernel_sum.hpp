#ifndef ADKDE_SIMD_KERNEL_SUM_HPP
#define ADKDE_SIMD_KERNEL_SUM_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace adkde::simd {

inline constexpr int kMaxTerms = 8;    // kernel order l <= 8
inline constexpr int kMaxCoords = 16;  // block size <= 16

//! One coordinate of a product-kernel row sum: column data, center, and the
//! per-term slopes of the piecewise-linear kernel with 1/h folded in.
struct CoordPlan {
    const double* col = nullptr;
    double x0 = 0.0;
    double slope[kMaxTerms] = {};
};

//! Row-sum task: sum over rows j of prod_c K_c(x_{j,c}) together with the sum
//! of absolute products. K_c(x) = sum_t coeff[t] * max(0, 1-|x-x0_c|*slope[c][t]).
struct KernelSumPlan {
    std::int64_t n = 0;
    int ncoord = 0;
    int nterm = 0;
    double coeff[kMaxTerms] = {};
    CoordPlan coord[kMaxCoords] = {};
};

struct KernelSumResult {
    double sum = 0.0;
    double abs_sum = 0.0;
};

enum class Backend { scalar = 0, avx2 = 1, neon = 2 };

const char* backend_name(Backend b);

//! Backends compiled into this binary (scalar always; others per platform).
std::vector<Backend> compiled_backends();

//! Compiled and usable on this CPU.
bool backend_available(Backend b);

//! The backend kernel_sum() dispatches to. Defaults to the widest available;
//! ADKDE_BACKEND=scalar|avx2|neon overrides at startup.
Backend active_backend();

//! Pin the dispatch for tests/benchmarks; throws if unavailable.
void force_backend(Backend b);

//! All backends execute the same 4-lane blocked compensated summation, so
//! results are identical across them, not merely close.
KernelSumResult kernel_sum(const KernelSumPlan& plan);

KernelSumResult kernel_sum_scalar(const KernelSumPlan& plan);
#if defined(ADKDE_HAVE_AVX2)
KernelSumResult kernel_sum_avx2(const KernelSumPlan& plan);
#endif
#if defined(ADKDE_HAVE_NEON)
KernelSumResult kernel_sum_neon(const KernelSumPlan& plan);
#endif

} // namespace adkde::simd

#endif
