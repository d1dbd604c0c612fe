#ifndef ADKDE_MC_HPP
#define ADKDE_MC_HPP

#include "adkde/config.hpp"
#include "adkde/selection.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace adkde {

//! One replication's outcome at a fixed n.
struct RepMetrics {
    double estimate = 0.0;
    double abs_err = 0.0;   // |estimate - f(x0)|
    double err_pow_q = 0.0; // abs_err^q
    Bandwidth h;
    std::string partition;
};

struct RiskPoint {
    std::int64_t n = 0;
    int replications = 0;
    double risk = 0.0;     // (mean err^q)^{1/q}
    double std_error = 0.0; // delta-method standard error of the risk
    Bandwidth mean_h;
    //! Selection frequency per partition of P-bar, canonical order.
    std::vector<std::pair<std::string, int>> partition_freq;
};

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double std_error = 0.0;
    double ci_lo = 0.0, ci_hi = 0.0;  // 95% band
};

struct RiskReport {
    std::vector<RiskPoint> points;
    std::optional<SlopeFit> slope;  // fitted over >= 3 points
};

//! Index-parallel loop; work item i always lands in slot i, so results are
//! identical for any thread count.
void parallel_for(int threads, int count, const std::function<void(int)>& fn);

//! R replications of {sample, select, record |f̂ - f(x0)|^q} at one n.
//! Candidates are built once up front (they are data-free), so an empty grid
//! aborts before any sampling. per_rep, when given, receives every replication.
RiskPoint mc_risk_point(const ExperimentConfig& cfg, std::int64_t n, int threads,
                        std::vector<RepMetrics>* per_rep = nullptr);

//! All n values of the config.
RiskReport mc_risk(const ExperimentConfig& cfg, int threads);

//! mc_risk over >= 4 geometrically spaced n plus a log-log slope fit.
RiskReport rate_sweep(const ExperimentConfig& cfg, int threads);

//! Selected estimator vs the same rule forced to one partition, on shared
//! draws. p_value is the one-sided paired-t probability that the selected
//! rule's q-th-power error is not smaller.
struct PairedComparison {
    RiskPoint selected;
    RiskPoint forced;
    double mean_diff = 0.0;  // mean of err_sel^q - err_forced^q
    double t_stat = 0.0;
    double p_value = 1.0;
};

PairedComparison paired_forced_comparison(const ExperimentConfig& cfg, std::int64_t n,
                                          const Partition& forced, int threads);

//! Smoothing-bias functional B(h,eta) = ∫K(u)[f(x0+(h∨eta)u) - f(x0+eta*u)]du
//! for a 1-d model, plus the fitted ln|B| vs ln h slope over the h grid.
struct BiasReport {
    std::vector<double> h;
    std::vector<double> bias;
    double decay_exponent = 0.0;
};

BiasReport bias_bound_check(const Density& model, const HigherOrderKernel& kernel,
                            double x0, const std::vector<double>& h_grid, double eta);

} // namespace adkde

#endif
