#include "adkde/mc.hpp"

#include "adkde/numeric.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <atomic>
#include <cmath>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace adkde {

void parallel_for(int threads, int count, const std::function<void(int)>& fn) {
    if (threads < 1) threads = 1;
    if (threads == 1 || count <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::mutex mu;
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            for (int i = t; i < count && !failed.load(std::memory_order_relaxed); i += threads) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(mu);
                    if (!error) error = std::current_exception();
                    failed.store(true, std::memory_order_relaxed);
                }
            }
        });
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

namespace {

struct Problem {
    std::unique_ptr<Density> model;
    HigherOrderKernel kernel;
    std::vector<Partition> pbar;
    std::vector<Bandwidth> hbar;
    double f_x0 = 0.0;
    double lambda_eff = 1.0;
};

Problem setup(const ExperimentConfig& cfg) {
    if (cfg.x0.empty())
        throw std::invalid_argument("experiment: x0 is required");
    Problem pr{make_density(cfg), HigherOrderKernel(make_default_base(cfg.l)),
               make_pbar(cfg), make_hbar(cfg), 0.0, 1.0};
    pr.f_x0 = pr.model->eval(cfg.x0);
    pr.lambda_eff = lambda_effective(cfg, pr.kernel, d_bar_of(pr.pbar));
    return pr;
}

RiskPoint summarize(const ExperimentConfig& cfg, std::int64_t n,
                    const std::vector<Partition>& pbar,
                    const std::vector<RepMetrics>& reps) {
    RiskPoint pt;
    pt.n = n;
    pt.replications = static_cast<int>(reps.size());
    const double R = static_cast<double>(reps.size());
    double mean_q = 0.0;
    for (const RepMetrics& m : reps) mean_q += m.err_pow_q;
    mean_q /= R;
    pt.risk = std::pow(mean_q, 1.0 / cfg.q);

    double var_q = 0.0;
    for (const RepMetrics& m : reps) var_q += (m.err_pow_q - mean_q) * (m.err_pow_q - mean_q);
    var_q /= (R - 1.0);
    const double se_mean = std::sqrt(var_q / R);
    // Delta method: d/dm m^{1/q} = m^{1/q-1}/q.
    pt.std_error = mean_q > 0.0 ? se_mean * std::pow(mean_q, 1.0 / cfg.q - 1.0) / cfg.q : 0.0;

    pt.mean_h.assign(static_cast<std::size_t>(cfg.d), 0.0);
    for (const RepMetrics& m : reps)
        for (int i = 0; i < cfg.d; ++i)
            pt.mean_h[static_cast<std::size_t>(i)] += m.h[static_cast<std::size_t>(i)] / R;

    for (const Partition& p : pbar) {
        const std::string name = format_partition(p);
        int c = 0;
        for (const RepMetrics& m : reps)
            if (m.partition == name) ++c;
        pt.partition_freq.emplace_back(name, c);
    }
    return pt;
}

std::vector<RepMetrics> run_reps(const ExperimentConfig& cfg, std::int64_t n, int threads,
                                 const Problem& pr, const CandidateSet& candidates) {
    std::vector<RepMetrics> reps(static_cast<std::size_t>(cfg.replications));
    const SelectOptions opt{pr.lambda_eff, true};
    parallel_for(threads, cfg.replications, [&](int r) {
        const SampleMatrix data = sample(*pr.model, n, cfg.seed, static_cast<std::uint64_t>(r));
        const SelectionResult sel = select(data, cfg.x0, candidates, pr.kernel, opt);
        RepMetrics& m = reps[static_cast<std::size_t>(r)];
        m.estimate = sel.estimate;
        m.abs_err = std::fabs(sel.estimate - pr.f_x0);
        m.err_pow_q = std::pow(m.abs_err, cfg.q);
        m.h = sel.h;
        m.partition = format_partition(sel.P);
    });
    return reps;
}

} // namespace

RiskPoint mc_risk_point(const ExperimentConfig& cfg, std::int64_t n, int threads,
                        std::vector<RepMetrics>* per_rep) {
    const Problem pr = setup(cfg);
    const GridConfig grid = make_grid(cfg, n, pr.pbar, pr.kernel);
    const CandidateSet candidates = build_candidates(pr.hbar, pr.pbar, grid);
    std::vector<RepMetrics> reps = run_reps(cfg, n, threads, pr, candidates);
    RiskPoint pt = summarize(cfg, n, pr.pbar, reps);
    if (per_rep) *per_rep = std::move(reps);
    return pt;
}

namespace {
SlopeFit fit_loglog(const std::vector<RiskPoint>& pts);
}

RiskReport mc_risk(const ExperimentConfig& cfg, int threads) {
    if (cfg.n_values.empty()) throw std::invalid_argument("experiment: no n values");
    RiskReport rep;
    for (std::int64_t n : cfg.n_values)
        rep.points.push_back(mc_risk_point(cfg, n, threads));
    if (rep.points.size() >= 3) rep.slope = fit_loglog(rep.points);
    return rep;
}

namespace {

SlopeFit fit_loglog(const std::vector<RiskPoint>& pts) {
    const int k = static_cast<int>(pts.size());
    std::vector<double> x(static_cast<std::size_t>(k)), y(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        x[static_cast<std::size_t>(i)] = std::log(static_cast<double>(pts[static_cast<std::size_t>(i)].n));
        y[static_cast<std::size_t>(i)] = std::log(pts[static_cast<std::size_t>(i)].risk);
    }
    double mx = 0, my = 0;
    for (int i = 0; i < k; ++i) {
        mx += x[static_cast<std::size_t>(i)] / k;
        my += y[static_cast<std::size_t>(i)] / k;
    }
    double sxx = 0, sxy = 0;
    for (int i = 0; i < k; ++i) {
        const double dx = x[static_cast<std::size_t>(i)] - mx;
        sxx += dx * dx;
        sxy += dx * (y[static_cast<std::size_t>(i)] - my);
    }
    SlopeFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double rss = 0;
    for (int i = 0; i < k; ++i) {
        const double e = y[static_cast<std::size_t>(i)] - fit.intercept -
                         fit.slope * x[static_cast<std::size_t>(i)];
        rss += e * e;
    }
    const double s2 = rss / (k - 2);
    fit.std_error = std::sqrt(s2 / sxx);
    boost::math::students_t_distribution<double> tdist(k - 2);
    const double tq = boost::math::quantile(tdist, 0.975);
    fit.ci_lo = fit.slope - tq * fit.std_error;
    fit.ci_hi = fit.slope + tq * fit.std_error;
    return fit;
}

} // namespace

RiskReport rate_sweep(const ExperimentConfig& cfg, int threads) {
    if (cfg.n_values.size() < 4)
        throw std::invalid_argument("rate_sweep: need at least 4 n values");
    for (std::size_t i = 1; i < cfg.n_values.size(); ++i)
        if (cfg.n_values[i] <= cfg.n_values[i - 1])
            throw std::invalid_argument("rate_sweep: n values must increase");
    return mc_risk(cfg, threads);
}

PairedComparison paired_forced_comparison(const ExperimentConfig& cfg, std::int64_t n,
                                          const Partition& forced, int threads) {
    const Problem pr = setup(cfg);
    const GridConfig grid = make_grid(cfg, n, pr.pbar, pr.kernel);
    const CandidateSet cand_sel = build_candidates(pr.hbar, pr.pbar, grid);

    const std::vector<Partition> pbar_forced{forced};
    const GridConfig grid_forced = make_grid(cfg, n, pbar_forced, pr.kernel);
    const CandidateSet cand_forced = build_candidates(pr.hbar, pbar_forced, grid_forced);

    const SelectOptions opt{pr.lambda_eff, true};
    std::vector<RepMetrics> sel_reps(static_cast<std::size_t>(cfg.replications));
    std::vector<RepMetrics> forced_reps(static_cast<std::size_t>(cfg.replications));
    parallel_for(threads, cfg.replications, [&](int r) {
        // One draw per replication, shared by both rules: paired design.
        const SampleMatrix data = sample(*pr.model, n, cfg.seed, static_cast<std::uint64_t>(r));
        const auto run_rule = [&](const CandidateSet& cs, RepMetrics& m) {
            const SelectionResult sel = select(data, cfg.x0, cs, pr.kernel, opt);
            m.estimate = sel.estimate;
            m.abs_err = std::fabs(sel.estimate - pr.f_x0);
            m.err_pow_q = std::pow(m.abs_err, cfg.q);
            m.h = sel.h;
            m.partition = format_partition(sel.P);
        };
        run_rule(cand_sel, sel_reps[static_cast<std::size_t>(r)]);
        run_rule(cand_forced, forced_reps[static_cast<std::size_t>(r)]);
    });

    PairedComparison cmp;
    cmp.selected = summarize(cfg, n, pr.pbar, sel_reps);
    cmp.forced = summarize(cfg, n, pbar_forced, forced_reps);

    const double R = static_cast<double>(cfg.replications);
    std::vector<double> diff(static_cast<std::size_t>(cfg.replications));
    double mean = 0.0;
    for (int r = 0; r < cfg.replications; ++r) {
        diff[static_cast<std::size_t>(r)] = sel_reps[static_cast<std::size_t>(r)].err_pow_q -
                                            forced_reps[static_cast<std::size_t>(r)].err_pow_q;
        mean += diff[static_cast<std::size_t>(r)] / R;
    }
    double var = 0.0;
    for (double d : diff) var += (d - mean) * (d - mean);
    var /= (R - 1.0);
    cmp.mean_diff = mean;
    cmp.t_stat = mean / std::sqrt(var / R);
    boost::math::students_t_distribution<double> tdist(R - 1.0);
    cmp.p_value = boost::math::cdf(tdist, cmp.t_stat);  // one-sided: selected better
    return cmp;
}

BiasReport bias_bound_check(const Density& model, const HigherOrderKernel& kernel,
                            double x0, const std::vector<double>& h_grid, double eta) {
    if (model.dim() != 1)
        throw std::invalid_argument("bias_bound_check: needs a 1-d model");
    if (h_grid.size() < 2)
        throw std::invalid_argument("bias_bound_check: need at least 2 bandwidths");
    BiasReport rep;
    rep.h = h_grid;
    for (double h : h_grid) {
        const double hm = h > eta ? h : eta;
        const auto integrand = [&](double u) {
            return kernel(u) * (model.eval({x0 + hm * u}) - model.eval({x0 + eta * u}));
        };
        rep.bias.push_back(integrate(integrand, -0.5, 0.5, 1e-13));
    }
    // ln|B| vs ln h least squares.
    const int k = static_cast<int>(h_grid.size());
    double mx = 0, my = 0;
    std::vector<double> lx(static_cast<std::size_t>(k)), ly(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        lx[static_cast<std::size_t>(i)] = std::log(h_grid[static_cast<std::size_t>(i)]);
        const double b = std::fabs(rep.bias[static_cast<std::size_t>(i)]);
        ly[static_cast<std::size_t>(i)] = std::log(b > 0.0 ? b : 1e-300);
        mx += lx[static_cast<std::size_t>(i)] / k;
        my += ly[static_cast<std::size_t>(i)] / k;
    }
    double sxx = 0, sxy = 0;
    for (int i = 0; i < k; ++i) {
        const double dx = lx[static_cast<std::size_t>(i)] - mx;
        sxx += dx * dx;
        sxy += dx * (ly[static_cast<std::size_t>(i)] - my);
    }
    rep.decay_exponent = sxy / sxx;
    return rep;
}

} // namespace adkde
