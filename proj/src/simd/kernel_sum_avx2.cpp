#include "adkde/simd/kernel_sum.hpp"

#include "row_update.hpp"

#include <immintrin.h>

namespace adkde::simd {

KernelSumResult kernel_sum_avx2(const KernelSumPlan& plan) {
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d zero = _mm256_setzero_pd();
    const __m256d sign = _mm256_set1_pd(-0.0);

    __m256d sum = zero, sum_c = zero, abs_sum = zero, abs_c = zero;

    const std::int64_t n4 = plan.n & ~std::int64_t{3};
    std::int64_t j = 0;
    for (; j < n4; j += 4) {
        __m256d prod = one;
        for (int c = 0; c < plan.ncoord; ++c) {
            const CoordPlan& cp = plan.coord[c];
            __m256d x = _mm256_loadu_pd(cp.col + j);
            __m256d az = _mm256_andnot_pd(sign, _mm256_sub_pd(x, _mm256_set1_pd(cp.x0)));
            __m256d k = zero;
            for (int t = 0; t < plan.nterm; ++t) {
                __m256d arg = _mm256_sub_pd(one, _mm256_mul_pd(az, _mm256_set1_pd(cp.slope[t])));
                __m256d clipped = _mm256_max_pd(arg, zero);
                k = _mm256_add_pd(k, _mm256_mul_pd(_mm256_set1_pd(plan.coeff[t]), clipped));
            }
            prod = _mm256_mul_pd(prod, k);
            if (_mm256_movemask_pd(_mm256_cmp_pd(prod, zero, _CMP_EQ_OQ)) == 0xF) break;
        }
        __m256d y = _mm256_sub_pd(prod, sum_c);
        __m256d t = _mm256_add_pd(sum, y);
        sum_c = _mm256_sub_pd(_mm256_sub_pd(t, sum), y);
        sum = t;

        __m256d ap = _mm256_andnot_pd(sign, prod);
        y = _mm256_sub_pd(ap, abs_c);
        t = _mm256_add_pd(abs_sum, y);
        abs_c = _mm256_sub_pd(_mm256_sub_pd(t, abs_sum), y);
        abs_sum = t;
    }

    alignas(32) double s[4], sc[4], as[4], ac[4];
    _mm256_store_pd(s, sum);
    _mm256_store_pd(sc, sum_c);
    _mm256_store_pd(as, abs_sum);
    _mm256_store_pd(ac, abs_c);

    for (; j < plan.n; ++j)
        detail::row_update(plan, j, s, sc, as, ac);

    KernelSumResult r;
    r.sum = ((s[0] + s[1]) + s[2]) + s[3];
    r.abs_sum = ((as[0] + as[1]) + as[2]) + as[3];
    return r;
}

} // namespace adkde::simd
