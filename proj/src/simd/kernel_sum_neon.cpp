#include "adkde/simd/kernel_sum.hpp"

#include "row_update.hpp"

#include <arm_neon.h>

namespace adkde::simd {

// Two float64x2 registers emulate the 4-lane layout of the reference
// reduction (lanes 0-1 in the low register, 2-3 in the high one).
KernelSumResult kernel_sum_neon(const KernelSumPlan& plan) {
    const float64x2_t one = vdupq_n_f64(1.0);
    const float64x2_t zero = vdupq_n_f64(0.0);

    float64x2_t sum_lo = zero, sum_hi = zero, c_lo = zero, c_hi = zero;
    float64x2_t asum_lo = zero, asum_hi = zero, ac_lo = zero, ac_hi = zero;

    const std::int64_t n4 = plan.n & ~std::int64_t{3};
    std::int64_t j = 0;
    for (; j < n4; j += 4) {
        float64x2_t prod_lo = one, prod_hi = one;
        for (int c = 0; c < plan.ncoord; ++c) {
            const CoordPlan& cp = plan.coord[c];
            float64x2_t x_lo = vld1q_f64(cp.col + j);
            float64x2_t x_hi = vld1q_f64(cp.col + j + 2);
            float64x2_t x0 = vdupq_n_f64(cp.x0);
            float64x2_t az_lo = vabsq_f64(vsubq_f64(x_lo, x0));
            float64x2_t az_hi = vabsq_f64(vsubq_f64(x_hi, x0));
            float64x2_t k_lo = zero, k_hi = zero;
            for (int t = 0; t < plan.nterm; ++t) {
                float64x2_t sl = vdupq_n_f64(cp.slope[t]);
                float64x2_t co = vdupq_n_f64(plan.coeff[t]);
                float64x2_t arg_lo = vsubq_f64(one, vmulq_f64(az_lo, sl));
                float64x2_t arg_hi = vsubq_f64(one, vmulq_f64(az_hi, sl));
                k_lo = vaddq_f64(k_lo, vmulq_f64(co, vmaxq_f64(arg_lo, zero)));
                k_hi = vaddq_f64(k_hi, vmulq_f64(co, vmaxq_f64(arg_hi, zero)));
            }
            prod_lo = vmulq_f64(prod_lo, k_lo);
            prod_hi = vmulq_f64(prod_hi, k_hi);
            uint64x2_t z_lo = vceqq_f64(prod_lo, zero);
            uint64x2_t z_hi = vceqq_f64(prod_hi, zero);
            uint64x2_t all = vandq_u64(z_lo, z_hi);
            if (vgetq_lane_u64(all, 0) && vgetq_lane_u64(all, 1)) break;
        }
        float64x2_t y_lo = vsubq_f64(prod_lo, c_lo);
        float64x2_t y_hi = vsubq_f64(prod_hi, c_hi);
        float64x2_t t_lo = vaddq_f64(sum_lo, y_lo);
        float64x2_t t_hi = vaddq_f64(sum_hi, y_hi);
        c_lo = vsubq_f64(vsubq_f64(t_lo, sum_lo), y_lo);
        c_hi = vsubq_f64(vsubq_f64(t_hi, sum_hi), y_hi);
        sum_lo = t_lo;
        sum_hi = t_hi;

        float64x2_t ap_lo = vabsq_f64(prod_lo);
        float64x2_t ap_hi = vabsq_f64(prod_hi);
        y_lo = vsubq_f64(ap_lo, ac_lo);
        y_hi = vsubq_f64(ap_hi, ac_hi);
        t_lo = vaddq_f64(asum_lo, y_lo);
        t_hi = vaddq_f64(asum_hi, y_hi);
        ac_lo = vsubq_f64(vsubq_f64(t_lo, asum_lo), y_lo);
        ac_hi = vsubq_f64(vsubq_f64(t_hi, asum_hi), y_hi);
        asum_lo = t_lo;
        asum_hi = t_hi;
    }

    double s[4], sc[4], as[4], ac[4];
    vst1q_f64(s, sum_lo);
    vst1q_f64(s + 2, sum_hi);
    vst1q_f64(sc, c_lo);
    vst1q_f64(sc + 2, c_hi);
    vst1q_f64(as, asum_lo);
    vst1q_f64(as + 2, asum_hi);
    vst1q_f64(ac, ac_lo);
    vst1q_f64(ac + 2, ac_hi);

    for (; j < plan.n; ++j)
        detail::row_update(plan, j, s, sc, as, ac);

    KernelSumResult r;
    r.sum = ((s[0] + s[1]) + s[2]) + s[3];
    r.abs_sum = ((as[0] + as[1]) + as[2]) + as[3];
    return r;
}

} // namespace adkde::simd
