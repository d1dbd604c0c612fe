#include "adkde/estimators.hpp"

#include "adkde/simd/kernel_sum.hpp"

#include <cmath>
#include <stdexcept>

namespace adkde {

double block_volume(const Bandwidth& h, IndexSet I) {
    double v = 1.0;
    for (int i : set_indices(I)) v *= h[static_cast<std::size_t>(i)];
    return v;
}

Bandwidth cw_max(const Bandwidth& h, const Bandwidth& eta) {
    if (h.size() != eta.size())
        throw std::invalid_argument("cw_max: dimension mismatch");
    Bandwidth out(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) out[i] = h[i] > eta[i] ? h[i] : eta[i];
    return out;
}

namespace {

void check_inputs(const SampleMatrix& data, IndexSet I, const Bandwidth& h,
                  const std::vector<double>& x0) {
    if (data.rows() < 1) throw std::invalid_argument("estimator: empty sample");
    if (I == 0) throw std::invalid_argument("estimator: empty index set");
    const int d = data.cols();
    if (static_cast<int>(h.size()) != d || static_cast<int>(x0.size()) != d)
        throw std::invalid_argument("estimator: h and x0 must have d entries");
    if (I >= (IndexSet{1} << d))
        throw std::invalid_argument("estimator: index set outside {1..d}");
    for (int i : set_indices(I)) {
        const double hi = h[static_cast<std::size_t>(i)];
        if (!(hi > 0.0) || hi > 1.0)
            throw std::invalid_argument("estimator: bandwidths must lie in (0,1]");
    }
}

//! Same 4-lane compensated reduction as the row-sum backends, for bases
//! without a piecewise-linear profile.
simd::KernelSumResult generic_sum(const SampleMatrix& data, const std::vector<int>& idx,
                                  const Bandwidth& h, const HigherOrderKernel& kernel,
                                  const std::vector<double>& x0) {
    double sum[4] = {}, sum_c[4] = {};
    double abs_sum[4] = {}, abs_c[4] = {};
    const std::int64_t n = data.rows();
    for (std::int64_t j = 0; j < n; ++j) {
        double prod = 1.0;
        for (int i : idx) {
            const std::size_t ui = static_cast<std::size_t>(i);
            prod *= kernel((data.col(i)[j] - x0[ui]) / h[ui]);
            if (prod == 0.0) break;
        }
        const int lane = static_cast<int>(j & 3);
        double y = prod - sum_c[lane];
        double t = sum[lane] + y;
        sum_c[lane] = (t - sum[lane]) - y;
        sum[lane] = t;
        const double ap = std::fabs(prod);
        y = ap - abs_c[lane];
        t = abs_sum[lane] + y;
        abs_c[lane] = (t - abs_sum[lane]) - y;
        abs_sum[lane] = t;
    }
    simd::KernelSumResult r;
    r.sum = ((sum[0] + sum[1]) + sum[2]) + sum[3];
    r.abs_sum = ((abs_sum[0] + abs_sum[1]) + abs_sum[2]) + abs_sum[3];
    return r;
}

} // namespace

MarginalResult marginal_with_envelope(const SampleMatrix& data, IndexSet I,
                                      const Bandwidth& h, const HigherOrderKernel& kernel,
                                      const std::vector<double>& x0) {
    check_inputs(data, I, h, x0);
    const std::vector<int> idx = set_indices(I);
    const std::int64_t n = data.rows();

    simd::KernelSumResult sums;
    const int nterm = static_cast<int>(kernel.profile_coeff().size());
    if (kernel.has_linear_profile() && static_cast<int>(idx.size()) <= simd::kMaxCoords &&
        nterm <= simd::kMaxTerms) {
        simd::KernelSumPlan plan;
        plan.n = n;
        plan.ncoord = static_cast<int>(idx.size());
        plan.nterm = nterm;
        for (int t = 0; t < nterm; ++t)
            plan.coeff[t] = kernel.profile_coeff()[static_cast<std::size_t>(t)];
        for (int c = 0; c < plan.ncoord; ++c) {
            const int i = idx[static_cast<std::size_t>(c)];
            const std::size_t ui = static_cast<std::size_t>(i);
            plan.coord[c].col = data.col(i);
            plan.coord[c].x0 = x0[ui];
            for (int t = 0; t < nterm; ++t)
                plan.coord[c].slope[t] = kernel.profile_slope()[static_cast<std::size_t>(t)] / h[ui];
        }
        sums = simd::kernel_sum(plan);
    } else {
        sums = generic_sum(data, idx, h, kernel, x0);
    }

    const double inv_nv = 1.0 / (static_cast<double>(n) * block_volume(h, I));
    MarginalResult out;
    out.estimate = sums.sum * inv_nv;
    const double mean_abs = sums.abs_sum * inv_nv;
    out.envelope = mean_abs > 1.0 ? mean_abs : 1.0;
    return out;
}

double marginal_estimate(const SampleMatrix& data, IndexSet I, const Bandwidth& h,
                         const HigherOrderKernel& kernel, const std::vector<double>& x0) {
    return marginal_with_envelope(data, I, h, kernel, x0).estimate;
}

double product_estimate(const SampleMatrix& data, const Bandwidth& h, const Partition& P,
                        const HigherOrderKernel& kernel, const std::vector<double>& x0) {
    if (P.dimension() != data.cols())
        throw std::invalid_argument("product_estimate: partition dimension mismatch");
    double prod = 1.0;
    for (IndexSet I : P.blocks())
        prod *= marginal_estimate(data, I, h, kernel, x0);
    return prod;
}

double auxiliary_estimate(const SampleMatrix& data, const Bandwidth& h, const Partition& P,
                          const Bandwidth& eta, const Partition& Q,
                          const HigherOrderKernel& kernel, const std::vector<double>& x0) {
    const Partition R = compose(P, Q);
    const Bandwidth hm = cw_max(h, eta);
    double prod = 1.0;
    for (IndexSet J : R.blocks())
        prod *= marginal_estimate(data, J, hm, kernel, x0);
    return prod;
}

double g_tilde(const SampleMatrix& data, IndexSet I, const Bandwidth& h,
               const HigherOrderKernel& kernel, const std::vector<double>& x0) {
    return marginal_with_envelope(data, I, h, kernel, x0).envelope;
}

} // namespace adkde
