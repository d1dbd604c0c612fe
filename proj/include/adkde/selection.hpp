#ifndef ADKDE_SELECTION_HPP
#define ADKDE_SELECTION_HPP

#include "adkde/estimators.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace adkde {

//! Bandwidth-grid parameters for one sample size n.
struct GridConfig {
    Bandwidth default_anchor;               // d entries, used for any block not in `anchors`
    std::map<IndexSet, Bandwidth> anchors;  // optional per-block override (full-length vectors)
    std::function<double(int)> tau;         // s -> tau(s) in (0,1]
    double z = 1.0;                         // box expansion exponent
    double a_eff = 1.0;                     // grid feasibility constant
    std::int64_t n = 0;

    const Bandwidth& anchor_for(IndexSet I) const;
};

struct Candidate {
    Bandwidth h;
    Partition P;
};

//! Raised when a block's bandwidth grid (or the whole candidate set) is empty;
//! the message names the binding inequality.
struct EmptyCandidateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CandidateSet {
    std::vector<Candidate> admitted;  // canonical order: h lexicographic, then partition
    std::vector<Bandwidth> hbar;
    std::vector<Partition> pbar;
    GridConfig grid;
    double v_max = 0.0;  // sup over P of inf over blocks of the anchor volume
};

//! V_max over the partition list (recomputed from anchors, never stored stale).
double compute_v_max(const std::vector<Partition>& pbar, const GridConfig& grid);

//! M_n(I): the largest level m >= 1 with v_m (V_anchor ∧ V_max) >= ln(n)/(a n)
//! and m <= log2(n); 0 when even m = 1 fails.
int grid_levels(IndexSet I, const GridConfig& grid, double v_max);

//! True iff some level m in 1..M_n(I) admits h over block I: the volume lies
//! in the anchor band or the V_max band at level m, and every h_i lies in
//! [1/n, v_m^{-z} anchor_i]. Throws EmptyCandidateError when M_n(I) < 1.
bool grid_membership(const Bandwidth& h, IndexSet I, const GridConfig& grid, double v_max);

//! Filters hbar x pbar by per-block grid membership. Partitions whose blocks
//! have empty grids are dropped (recorded); an empty result throws with the
//! binding constraint spelled out.
CandidateSet build_candidates(const std::vector<Bandwidth>& hbar,
                              const std::vector<Partition>& pbar, const GridConfig& grid);

//! delta(h,P): double sup over partitions and blocks of composed partitions of
//! anchor-volume ratios, floored by V_max over the smallest anchor volume of P.
double delta_factor(const Bandwidth& h, const Partition& P, const CandidateSet& candidates);

//! Max over candidate pairs and blocks of composed partitions of twice the
//! empirical envelope at the componentwise-max bandwidth; always >= 2.
double g_bar(const SampleMatrix& data, const CandidateSet& candidates,
             const HigherOrderKernel& kernel, const std::vector<double>& x0);

//! sqrt(g_bar^2 (1 ∨ ln delta(h,P)) / (n V(h,P))) with V(h,P) the smallest
//! block volume of h over P.
double u_hat(const Bandwidth& h, const Partition& P, double g_bar_val,
             const CandidateSet& candidates);

//! 3 lambda_eff d^2 (2 g_bar)^{d^2 - 1}.
double lambda_n(double g_bar_val, double lambda_eff, int d);

//! Sup over admitted (eta,P') of [|aux - product(eta,P')| - Lambda(U' + U)]_+,
//! the self-pair included (clips to zero).
double delta_hat(int candidate_index, const SampleMatrix& data, const std::vector<double>& x0,
                 const CandidateSet& candidates, const HigherOrderKernel& kernel,
                 double lambda, const std::vector<double>& u_hats);

struct CandidateTrace {
    double delta_hat = 0.0;
    double u_hat = 0.0;
    double criterion = 0.0;
};

struct SelectionResult {
    int index = -1;  // into candidates.admitted
    Bandwidth h;
    Partition P = Partition::one_block(1);
    double estimate = 0.0;
    double g_bar = 0.0;
    double lambda = 0.0;
    std::vector<CandidateTrace> trace;  // one per admitted candidate, same order
    int candidate_count = 0;
    std::int64_t cache_hits = 0;
    std::int64_t cache_misses = 0;
    double elapsed_seconds = 0.0;  // diagnostic only, never serialized
};

struct SelectOptions {
    double lambda_eff = 1.0;
    bool use_cache = true;  // false recomputes every marginal at each use (debug path)
};

//! The argmin of delta_hat + 2 Lambda u_hat over the admitted candidates.
//! Ties break toward larger V(h,P), then lexicographically smaller h, then
//! the canonical partition order, so the result is a pure function of the
//! candidate SET, not the list order.
SelectionResult select(const SampleMatrix& data, const std::vector<double>& x0,
                       const CandidateSet& candidates, const HigherOrderKernel& kernel,
                       const SelectOptions& options = {});

} // namespace adkde

#endif
