#include "adkde/simd/kernel_sum.hpp"

#include "row_update.hpp"

namespace adkde::simd {

// Reference semantics for every backend: row j lives in lane j mod 4, each
// lane keeps a Kahan-compensated pair, lanes combine left to right at the
// end. The vector backends execute these exact operations four rows at a
// time, which is what makes cross-backend results identical.
KernelSumResult kernel_sum_scalar(const KernelSumPlan& plan) {
    double sum[4] = {0, 0, 0, 0}, sum_c[4] = {0, 0, 0, 0};
    double abs_sum[4] = {0, 0, 0, 0}, abs_c[4] = {0, 0, 0, 0};

    for (std::int64_t j = 0; j < plan.n; ++j)
        detail::row_update(plan, j, sum, sum_c, abs_sum, abs_c);

    KernelSumResult r;
    r.sum = ((sum[0] + sum[1]) + sum[2]) + sum[3];
    r.abs_sum = ((abs_sum[0] + abs_sum[1]) + abs_sum[2]) + abs_sum[3];
    return r;
}

} // namespace adkde::simd
