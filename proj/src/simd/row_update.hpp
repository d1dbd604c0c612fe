#ifndef ADKDE_SIMD_ROW_UPDATE_HPP
#define ADKDE_SIMD_ROW_UPDATE_HPP

#include "adkde/simd/kernel_sum.hpp"

#include <cmath>

namespace adkde::simd::detail {

// One row of the reference reduction. Vector backends reuse this for tail
// rows so lane contents stay identical to the scalar backend.
inline void row_update(const KernelSumPlan& plan, std::int64_t j,
                       double* sum, double* sum_c,
                       double* abs_sum, double* abs_c) {
    const int lane = static_cast<int>(j & 3);
    double prod = 1.0;
    for (int c = 0; c < plan.ncoord; ++c) {
        const CoordPlan& cp = plan.coord[c];
        const double az = std::abs(cp.col[j] - cp.x0);
        double k = 0.0;
        for (int t = 0; t < plan.nterm; ++t) {
            const double arg = 1.0 - az * cp.slope[t];
            const double clipped = arg > 0.0 ? arg : 0.0;
            k = k + plan.coeff[t] * clipped;
        }
        prod = prod * k;
        if (prod == 0.0) break;
    }
    double y = prod - sum_c[lane];
    double t = sum[lane] + y;
    sum_c[lane] = (t - sum[lane]) - y;
    sum[lane] = t;

    const double ap = std::abs(prod);
    y = ap - abs_c[lane];
    t = abs_sum[lane] + y;
    abs_c[lane] = (t - abs_sum[lane]) - y;
    abs_sum[lane] = t;
}

} // namespace adkde::simd::detail

#endif
