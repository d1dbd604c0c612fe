#include "adkde/selection.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

namespace adkde {

const Bandwidth& GridConfig::anchor_for(IndexSet I) const {
    auto it = anchors.find(I);
    return it != anchors.end() ? it->second : default_anchor;
}

double compute_v_max(const std::vector<Partition>& pbar, const GridConfig& grid) {
    if (pbar.empty()) throw std::invalid_argument("compute_v_max: no partitions");
    double best = 0.0;
    for (const Partition& P : pbar) {
        double inf_v = std::numeric_limits<double>::infinity();
        for (IndexSet I : P.blocks())
            inf_v = std::min(inf_v, block_volume(grid.anchor_for(I), I));
        best = std::max(best, inf_v);
    }
    return best;
}

namespace {

double grid_floor_requirement(const GridConfig& grid) {
    return std::log(static_cast<double>(grid.n)) /
           (grid.a_eff * static_cast<double>(grid.n));
}

std::string empty_grid_message(IndexSet I, const GridConfig& grid, double v_max) {
    const double va = block_volume(grid.anchor_for(I), I);
    const double floor_v = std::min(va, v_max);
    const double t = grid.tau(set_size(I));
    const double v1 = std::pow(2.0, -t);
    std::ostringstream os;
    os << "empty bandwidth grid for block {" << format_index_set(I)
       << "}: binding constraint v_1*min(V_anchor,V_max) = " << v1 * floor_v
       << " < ln(n)/(a*n) = " << grid_floor_requirement(grid) << " with n=" << grid.n
       << ", a=" << grid.a_eff << ", tau=" << t;
    return os.str();
}

void check_grid(const GridConfig& grid, int d) {
    if (grid.n < 3) throw std::invalid_argument("grid: n must be >= 3");
    if (!(grid.a_eff > 0.0)) throw std::invalid_argument("grid: a must be positive");
    if (!(grid.z > 0.0)) throw std::invalid_argument("grid: z must be positive");
    if (!grid.tau) throw std::invalid_argument("grid: tau is unset");
    for (int s = 1; s <= d; ++s) {
        const double t = grid.tau(s);
        if (!(t > 0.0) || t > 1.0)
            throw std::invalid_argument("grid: tau(s) must lie in (0,1]");
    }
    if (static_cast<int>(grid.default_anchor.size()) != d)
        throw std::invalid_argument("grid: anchor must have d entries");
    for (double a : grid.default_anchor)
        if (!(a > 0.0) || a > 1.0)
            throw std::invalid_argument("grid: anchor entries must lie in (0,1]");
}

} // namespace

int grid_levels(IndexSet I, const GridConfig& grid, double v_max) {
    const double va = block_volume(grid.anchor_for(I), I);
    const double floor_v = std::min(va, v_max);
    const double need = grid_floor_requirement(grid);
    const double t = grid.tau(set_size(I));
    const double max_m = std::log2(static_cast<double>(grid.n));
    int m = 0;
    while (m + 1 <= max_m && m < 1024) {
        const double vm = std::pow(2.0, -(m + 1) * t);
        if (vm * floor_v < need) break;
        ++m;
    }
    return m;
}

bool grid_membership(const Bandwidth& h, IndexSet I, const GridConfig& grid, double v_max) {
    const int M = grid_levels(I, grid, v_max);
    if (M < 1) throw EmptyCandidateError(empty_grid_message(I, grid, v_max));

    const Bandwidth& anchor = grid.anchor_for(I);
    const double va = block_volume(anchor, I);
    const double vh = block_volume(h, I);
    const double t = grid.tau(set_size(I));
    const double lo = 1.0 / static_cast<double>(grid.n);
    for (int m = 1; m <= M; ++m) {
        const double vm = std::pow(2.0, -m * t);
        const double vm_prev = std::pow(2.0, -(m - 1) * t);
        const bool in_band = (vm * va <= vh && vh <= vm_prev * va) ||
                             (vm * v_max <= vh && vh <= vm_prev * v_max);
        if (!in_band) continue;
        bool in_box = true;
        for (int i : set_indices(I)) {
            const std::size_t ui = static_cast<std::size_t>(i);
            const double cap = std::pow(vm, -grid.z) * anchor[ui];
            if (h[ui] < lo || h[ui] > cap) {
                in_box = false;
                break;
            }
        }
        if (in_box) return true;
    }
    return false;
}

CandidateSet build_candidates(const std::vector<Bandwidth>& hbar,
                              const std::vector<Partition>& pbar, const GridConfig& grid) {
    if (hbar.empty()) throw std::invalid_argument("build_candidates: no bandwidth vectors");
    if (pbar.empty()) throw std::invalid_argument("build_candidates: no partitions");
    const int d = pbar.front().dimension();
    check_grid(grid, d);
    for (const Partition& P : pbar)
        if (P.dimension() != d)
            throw std::invalid_argument("build_candidates: mixed partition dimensions");
    for (const Bandwidth& h : hbar)
        if (static_cast<int>(h.size()) != d)
            throw std::invalid_argument("build_candidates: bandwidth vector of wrong length");

    CandidateSet cs;
    cs.hbar = hbar;
    cs.pbar = pbar;
    cs.grid = grid;
    cs.v_max = compute_v_max(pbar, grid);

    std::vector<std::string> diagnostics;
    for (const Partition& P : pbar) {
        bool grids_ok = true;
        for (IndexSet I : P.blocks()) {
            if (grid_levels(I, grid, cs.v_max) < 1) {
                diagnostics.push_back(empty_grid_message(I, grid, cs.v_max));
                grids_ok = false;
                break;
            }
        }
        if (!grids_ok) continue;
        for (const Bandwidth& h : hbar) {
            bool all = true;
            for (IndexSet I : P.blocks()) {
                if (!grid_membership(h, I, grid, cs.v_max)) {
                    all = false;
                    break;
                }
            }
            if (all) cs.admitted.push_back({h, P});
        }
    }

    std::sort(cs.admitted.begin(), cs.admitted.end(),
              [](const Candidate& a, const Candidate& b) {
                  if (a.h != b.h) return a.h < b.h;
                  return partition_less(a.P, b.P);
              });
    cs.admitted.erase(std::unique(cs.admitted.begin(), cs.admitted.end(),
                                  [](const Candidate& a, const Candidate& b) {
                                      return a.h == b.h && a.P == b.P;
                                  }),
                      cs.admitted.end());

    if (cs.admitted.empty()) {
        std::ostringstream os;
        os << "empty candidate set: no (h,P) pair passed grid membership";
        if (!diagnostics.empty()) {
            os << "; " << diagnostics.front();
            if (diagnostics.size() > 1)
                os << " (and " << diagnostics.size() - 1 << " more blocks alike)";
        } else {
            os << "; with n=" << grid.n << ", a=" << grid.a_eff
               << " the admissible volume bands caught none of the supplied bandwidths";
        }
        throw EmptyCandidateError(os.str());
    }
    return cs;
}

double delta_factor(const Bandwidth& h, const Partition& P, const CandidateSet& candidates) {
    const GridConfig& grid = candidates.grid;
    double best = 0.0;
    for (const Partition& Q : candidates.pbar) {
        const Partition R = compose(P, Q);
        for (IndexSet J : R.blocks()) {
            const IndexSet I = P.block_containing(lowest_index(J));
            const IndexSet Ip = Q.block_containing(lowest_index(J));
            const Bandwidth& aI = grid.anchor_for(I);
            const Bandwidth& aIp = grid.anchor_for(Ip);
            double num = 1.0;
            for (int i : set_indices(J)) {
                const std::size_t ui = static_cast<std::size_t>(i);
                num *= aI[ui] > aIp[ui] ? aI[ui] : aIp[ui];
            }
            best = std::max(best, num / block_volume(h, J));
        }
    }
    double min_anchor_vol = std::numeric_limits<double>::infinity();
    for (IndexSet I : P.blocks())
        min_anchor_vol = std::min(min_anchor_vol, block_volume(grid.anchor_for(I), I));
    return std::max(best, candidates.v_max / min_anchor_vol);
}

namespace {

//! Write-once marginal store keyed by (block, exact bandwidth fragment).
struct Evaluator {
    const SampleMatrix& data;
    const HigherOrderKernel& kernel;
    const std::vector<double>& x0;
    bool use_cache;
    std::map<std::pair<IndexSet, Bandwidth>, MarginalResult> cache;
    std::int64_t hits = 0, misses = 0;

    MarginalResult get(IndexSet I, const Bandwidth& h_full) {
        if (!use_cache) {
            ++misses;
            return marginal_with_envelope(data, I, h_full, kernel, x0);
        }
        std::pair<IndexSet, Bandwidth> key{I, project(h_full, I)};
        auto it = cache.find(key);
        if (it != cache.end()) {
            ++hits;
            return it->second;
        }
        ++misses;
        const MarginalResult r = marginal_with_envelope(data, I, h_full, kernel, x0);
        cache.emplace(std::move(key), r);
        return r;
    }
};

double min_block_volume(const Bandwidth& h, const Partition& P) {
    double v = std::numeric_limits<double>::infinity();
    for (IndexSet I : P.blocks()) v = std::min(v, block_volume(h, I));
    return v;
}

} // namespace

double g_bar(const SampleMatrix& data, const CandidateSet& candidates,
             const HigherOrderKernel& kernel, const std::vector<double>& x0) {
    if (candidates.admitted.empty())
        throw EmptyCandidateError("g_bar: empty candidate set");
    Evaluator ev{data, kernel, x0, true, {}, 0, 0};
    const auto& adm = candidates.admitted;
    double best = 0.0;
    for (std::size_t a = 0; a < adm.size(); ++a) {
        for (std::size_t b = a; b < adm.size(); ++b) {
            const Partition R = compose(adm[a].P, adm[b].P);
            const Bandwidth hm = cw_max(adm[a].h, adm[b].h);
            for (IndexSet J : R.blocks())
                best = std::max(best, 2.0 * ev.get(J, hm).envelope);
        }
    }
    return best;
}

double u_hat(const Bandwidth& h, const Partition& P, double g_bar_val,
             const CandidateSet& candidates) {
    const double v = min_block_volume(h, P);
    if (!(v > 0.0)) throw std::invalid_argument("u_hat: V(h,P) must be positive");
    const double delta = delta_factor(h, P, candidates);
    const double log_floor = std::max(1.0, std::log(delta));
    return std::sqrt(g_bar_val * g_bar_val * log_floor /
                     (static_cast<double>(candidates.grid.n) * v));
}

double lambda_n(double g_bar_val, double lambda_eff, int d) {
    return 3.0 * lambda_eff * d * d * std::pow(2.0 * g_bar_val, d * d - 1);
}

double delta_hat(int candidate_index, const SampleMatrix& data, const std::vector<double>& x0,
                 const CandidateSet& candidates, const HigherOrderKernel& kernel,
                 double lambda, const std::vector<double>& u_hats) {
    const auto& adm = candidates.admitted;
    if (candidate_index < 0 || candidate_index >= static_cast<int>(adm.size()))
        throw std::invalid_argument("delta_hat: candidate index out of range");
    if (u_hats.size() != adm.size())
        throw std::invalid_argument("delta_hat: u_hats must cover every candidate");
    const Candidate& c = adm[static_cast<std::size_t>(candidate_index)];
    double best = 0.0;  // the sup's positive part: start at the clip value
    for (std::size_t o = 0; o < adm.size(); ++o) {
        const double aux = auxiliary_estimate(data, c.h, c.P, adm[o].h, adm[o].P, kernel, x0);
        const double prod = product_estimate(data, adm[o].h, adm[o].P, kernel, x0);
        const double term = std::fabs(aux - prod) -
                            lambda * (u_hats[o] + u_hats[static_cast<std::size_t>(candidate_index)]);
        best = std::max(best, term);
    }
    return best;
}

SelectionResult select(const SampleMatrix& data, const std::vector<double>& x0,
                       const CandidateSet& candidates, const HigherOrderKernel& kernel,
                       const SelectOptions& options) {
    const auto t0 = std::chrono::steady_clock::now();
    const int d = data.cols();
    if (static_cast<int>(x0.size()) != d)
        throw std::invalid_argument("select: x0 must have d entries");
    if (candidates.grid.n != data.rows())
        throw std::invalid_argument("select: candidate grid was built for a different n");
    const auto& adm = candidates.admitted;
    const int m = static_cast<int>(adm.size());
    if (m == 0) throw EmptyCandidateError("select: empty candidate set");

    Evaluator ev{data, kernel, x0, options.use_cache, {}, 0, 0};

    double gb = 0.0;
    for (int a = 0; a < m; ++a) {
        for (int b = a; b < m; ++b) {
            const Partition R = compose(adm[static_cast<std::size_t>(a)].P,
                                        adm[static_cast<std::size_t>(b)].P);
            const Bandwidth hm = cw_max(adm[static_cast<std::size_t>(a)].h,
                                        adm[static_cast<std::size_t>(b)].h);
            for (IndexSet J : R.blocks())
                gb = std::max(gb, 2.0 * ev.get(J, hm).envelope);
        }
    }
    const double lambda = lambda_n(gb, options.lambda_eff, d);

    std::vector<double> u_hats(static_cast<std::size_t>(m));
    std::vector<double> products(static_cast<std::size_t>(m));
    std::vector<double> volumes(static_cast<std::size_t>(m));
    for (int c = 0; c < m; ++c) {
        const Candidate& cand = adm[static_cast<std::size_t>(c)];
        u_hats[static_cast<std::size_t>(c)] = u_hat(cand.h, cand.P, gb, candidates);
        volumes[static_cast<std::size_t>(c)] = min_block_volume(cand.h, cand.P);
        double prod = 1.0;
        for (IndexSet I : cand.P.blocks()) prod *= ev.get(I, cand.h).estimate;
        products[static_cast<std::size_t>(c)] = prod;
    }

    SelectionResult res;
    res.trace.resize(static_cast<std::size_t>(m));
    for (int c = 0; c < m; ++c) {
        const Candidate& cand = adm[static_cast<std::size_t>(c)];
        double dh = 0.0;
        for (int o = 0; o < m; ++o) {
            const Candidate& other = adm[static_cast<std::size_t>(o)];
            const Partition R = compose(cand.P, other.P);
            const Bandwidth hm = cw_max(cand.h, other.h);
            double aux = 1.0;
            for (IndexSet J : R.blocks()) aux *= ev.get(J, hm).estimate;
            const double term = std::fabs(aux - products[static_cast<std::size_t>(o)]) -
                                lambda * (u_hats[static_cast<std::size_t>(o)] +
                                          u_hats[static_cast<std::size_t>(c)]);
            dh = std::max(dh, term);
        }
        auto& tr = res.trace[static_cast<std::size_t>(c)];
        tr.delta_hat = dh;
        tr.u_hat = u_hats[static_cast<std::size_t>(c)];
        tr.criterion = dh + 2.0 * lambda * u_hats[static_cast<std::size_t>(c)];
    }

    // Argmin over values only, so list order cannot matter: criterion, then
    // larger V(h,P), then lexicographically smaller h, then partition order.
    int best = 0;
    for (int c = 1; c < m; ++c) {
        const auto& tc = res.trace[static_cast<std::size_t>(c)];
        const auto& tb = res.trace[static_cast<std::size_t>(best)];
        bool better;
        if (tc.criterion != tb.criterion) {
            better = tc.criterion < tb.criterion;
        } else if (volumes[static_cast<std::size_t>(c)] != volumes[static_cast<std::size_t>(best)]) {
            better = volumes[static_cast<std::size_t>(c)] > volumes[static_cast<std::size_t>(best)];
        } else if (adm[static_cast<std::size_t>(c)].h != adm[static_cast<std::size_t>(best)].h) {
            better = adm[static_cast<std::size_t>(c)].h < adm[static_cast<std::size_t>(best)].h;
        } else {
            better = partition_less(adm[static_cast<std::size_t>(c)].P,
                                    adm[static_cast<std::size_t>(best)].P);
        }
        if (better) best = c;
    }

    res.index = best;
    res.h = adm[static_cast<std::size_t>(best)].h;
    res.P = adm[static_cast<std::size_t>(best)].P;
    res.estimate = products[static_cast<std::size_t>(best)];
    res.g_bar = gb;
    res.lambda = lambda;
    res.candidate_count = m;
    res.cache_hits = ev.hits;
    res.cache_misses = ev.misses;
    res.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

} // namespace adkde
