#ifndef ADKDE_ESTIMATORS_HPP
#define ADKDE_ESTIMATORS_HPP

#include "adkde/kernel.hpp"
#include "adkde/partition.hpp"
#include "adkde/sample.hpp"

#include <vector>

namespace adkde {

//! Per-coordinate bandwidths, entries in (0,1].
using Bandwidth = std::vector<double>;

//! V_{h_I}: product of h_i over i in I.
double block_volume(const Bandwidth& h, IndexSet I);

//! Componentwise maximum h ∨ eta.
Bandwidth cw_max(const Bandwidth& h, const Bandwidth& eta);

struct MarginalResult {
    double estimate = 0.0;   // may be negative with higher-order kernels
    double envelope = 1.0;   // G-tilde: max(1, mean |K_{h_I}|), always >= 1
};

//! One pass over the sample: the marginal estimate over block I and its
//! absolute-kernel envelope, both from the same fixed-order reduction.
MarginalResult marginal_with_envelope(const SampleMatrix& data, IndexSet I,
                                      const Bandwidth& h, const HigherOrderKernel& kernel,
                                      const std::vector<double>& x0);

//! Mean of product-kernel evaluations at rows projected to I.
double marginal_estimate(const SampleMatrix& data, IndexSet I, const Bandwidth& h,
                         const HigherOrderKernel& kernel, const std::vector<double>& x0);

//! Product of marginal estimates over the blocks of P.
double product_estimate(const SampleMatrix& data, const Bandwidth& h, const Partition& P,
                        const HigherOrderKernel& kernel, const std::vector<double>& x0);

//! Product over blocks of compose(P,Q) of marginal estimates at h ∨ eta.
double auxiliary_estimate(const SampleMatrix& data, const Bandwidth& h, const Partition& P,
                          const Bandwidth& eta, const Partition& Q,
                          const HigherOrderKernel& kernel, const std::vector<double>& x0);

//! Floor at 1 of the absolute-kernel sample mean over block I.
double g_tilde(const SampleMatrix& data, IndexSet I, const Bandwidth& h,
               const HigherOrderKernel& kernel, const std::vector<double>& x0);

} // namespace adkde

#endif
