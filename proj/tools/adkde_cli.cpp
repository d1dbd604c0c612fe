#include "CLI11.hpp"

#include "adkde/config.hpp"
#include "adkde/mc.hpp"
#include "adkde/report.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace adkde;

std::vector<double> parse_values(const std::string& text, const std::string& what,
                                 bool allow_inf = false) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t next = text.find(',', pos);
        const std::string cell = text.substr(pos, next == std::string::npos ? next : next - pos);
        if (allow_inf && (cell == "inf" || cell == "Inf" || cell == "INF")) {
            out.push_back(kPInf);
        } else {
            std::size_t used = 0;
            double v = 0;
            try {
                v = std::stod(cell, &used);
            } catch (const std::exception&) {
                throw std::runtime_error(what + ": bad number '" + cell + "'");
            }
            if (used != cell.size())
                throw std::runtime_error(what + ": bad number '" + cell + "'");
            out.push_back(v);
        }
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    if (out.empty()) throw std::runtime_error(what + ": empty list");
    return out;
}

//! "-" means stdout; anything else is a file path (binary, no newline games).
void emit(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
    if (!out) throw std::runtime_error("failed writing output file: " + path);
}

std::string json_text(const nlohmann::json& j) { return j.dump(2) + "\n"; }

ExperimentConfig load_config(const std::string& path,
                             const std::optional<std::uint64_t>& seed) {
    ExperimentConfig cfg = parse_config_file(path);
    if (seed) cfg.seed = *seed;
    return cfg;
}

int run_simulate(const std::string& config_path, const std::optional<std::uint64_t>& seed,
                 int threads, const std::string& json_path) {
    const ExperimentConfig cfg = load_config(config_path, seed);
    const RiskReport rep = mc_risk(cfg, threads);
    emit(json_path, json_text(rep));
    return 0;
}

int run_sweep(const std::string& config_path, const std::optional<std::uint64_t>& seed,
              int threads, const std::string& csv_path, const std::string& json_path) {
    const ExperimentConfig cfg = load_config(config_path, seed);
    const RiskReport rep = rate_sweep(cfg, threads);
    emit(csv_path, sweep_csv(rep));
    emit(json_path, json_text(rep));
    return 0;
}

int run_estimate(const std::string& data_path, const std::string& x0_text,
                 const std::string& config_path) {
    const ExperimentConfig cfg = load_config(config_path, std::nullopt);
    const SampleMatrix data = read_csv(data_path);
    if (data.cols() != cfg.d)
        throw std::runtime_error("data has " + std::to_string(data.cols()) +
                                 " columns but the config says d=" + std::to_string(cfg.d));
    const std::vector<double> x0 = parse_values(x0_text, "--x0");
    if (static_cast<int>(x0.size()) != cfg.d)
        throw std::runtime_error("--x0 needs " + std::to_string(cfg.d) + " values");

    const HigherOrderKernel kernel(make_default_base(cfg.l));
    const std::vector<Partition> pbar = make_pbar(cfg);
    const std::vector<Bandwidth> hbar = make_hbar(cfg);
    const GridConfig grid = make_grid(cfg, data.rows(), pbar, kernel);
    const CandidateSet candidates = build_candidates(hbar, pbar, grid);
    const SelectOptions opt{lambda_effective(cfg, kernel, d_bar_of(pbar)), true};
    const SelectionResult sel = select(data, x0, candidates, kernel, opt);
    emit("-", json_text(nlohmann::json(sel)));
    return 0;
}

int run_constants(const std::string& kernel_arg, std::optional<int> q, std::optional<int> d,
                  std::optional<int> l, double z, double tau) {
    if (!kernel_arg.empty()) {
        std::string spec = kernel_arg;
        if (spec.rfind("l=", 0) == 0) spec = spec.substr(2);
        int order = 0;
        try {
            order = std::stoi(spec);
        } catch (const std::exception&) {
            throw std::runtime_error("--kernel expects l=<order> or <order>");
        }
        const HigherOrderKernel kernel(make_default_base(order));
        emit("-", kernel_csv(kernel));
        return 0;
    }
    if (!q || !d || !l)
        throw std::runtime_error("constants needs either --kernel or all of --q --d --l");
    const HigherOrderKernel kernel(make_default_base(*l));
    const ConstantsTable table = build_table(*q, *d, kernel, z, tau);
    emit("-", json_text(nlohmann::json(table)));
    return 0;
}

int run_rates(const std::string& beta_text, const std::string& p_text,
              const std::string& partition_text, std::int64_t n,
              std::optional<double> beta_max, std::optional<int> d_bar) {
    const std::vector<double> beta = parse_values(beta_text, "--beta");
    const std::vector<double> p = parse_values(p_text, "--p", true);
    if (beta.size() != p.size())
        throw std::runtime_error("--beta and --p must have the same length");
    const int d = static_cast<int>(beta.size());
    const Partition P = parse_partition(partition_text, d);
    double bm = beta_max ? *beta_max : *std::max_element(beta.begin(), beta.end());
    int db = d_bar ? *d_bar : P.max_block_size();
    const RateReport rep = rate_report(beta, p, P, n, bm, db);
    emit("-", json_text(nlohmann::json(rep)));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pointwise adaptive product-form kernel density estimation"};
    app.require_subcommand(1);

    std::optional<std::uint64_t> seed;
    int threads = 1;
    std::string config_path, csv_path = "-", json_path = "-";

    auto* sim = app.add_subcommand("simulate", "Monte Carlo risk for one config (JSON)");
    sim->add_option("--config", config_path, "key=value experiment file")
        ->required()
        ->check(CLI::ExistingFile);
    sim->add_option("--seed", seed, "master seed override");
    sim->add_option("--threads", threads, "replication threads")->check(CLI::PositiveNumber);
    sim->add_option("--json", json_path, "JSON output path ('-' = stdout)");

    auto* swp = app.add_subcommand("sweep", "risk over an n grid with a log-log slope fit");
    swp->add_option("--config", config_path, "key=value experiment file")
        ->required()
        ->check(CLI::ExistingFile);
    swp->add_option("--seed", seed, "master seed override");
    swp->add_option("--threads", threads, "replication threads")->check(CLI::PositiveNumber);
    swp->add_option("--csv", csv_path, "CSV output path ('-' = stdout)");
    swp->add_option("--json", json_path, "JSON summary path ('-' = stdout)");

    std::string data_path, x0_text;
    auto* est = app.add_subcommand("estimate", "select an estimate at x0 from CSV data");
    est->add_option("--data", data_path, "CSV with a header row, d numeric columns")
        ->required()
        ->check(CLI::ExistingFile);
    est->add_option("--x0", x0_text, "query point v1,v2,...,vd")->required();
    est->add_option("--config", config_path, "key=value estimator file")
        ->required()
        ->check(CLI::ExistingFile);

    std::string kernel_arg;
    std::optional<int> c_q, c_d, c_l;
    double c_z = 1.0, c_tau = 1.0;
    auto* con = app.add_subcommand("constants", "threshold-constant pipeline");
    con->add_option("--kernel", kernel_arg, "print kernel norms and moments as CSV (l=<order>)");
    con->add_option("--q", c_q, "risk order");
    con->add_option("--d", c_d, "dimension");
    con->add_option("--l", c_l, "kernel order");
    con->add_option("--z", c_z, "grid expansion exponent")->check(CLI::PositiveNumber);
    con->add_option("--tau", c_tau, "smallest tau in use, in (0,1]");

    std::string beta_text, p_text, partition_text;
    std::int64_t rates_n = 0;
    std::optional<double> r_beta_max;
    std::optional<int> r_d_bar;
    auto* rts = app.add_subcommand("rates", "closed-form rate report (JSON)");
    rts->add_option("--beta", beta_text, "smoothness b1,b2,...")->required();
    rts->add_option("--p", p_text, "integrability p1,p2,... ('inf' allowed)")->required();
    rts->add_option("--partition", partition_text, "1-based blocks, e.g. \"1,2|3\"")->required();
    rts->add_option("--n", rates_n, "sample size")->required()->check(CLI::PositiveNumber);
    rts->add_option("--beta-max", r_beta_max, "scale cap (default: max beta_i)");
    rts->add_option("--d-bar", r_d_bar, "largest block size of the scale (default: of P)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sim) return run_simulate(config_path, seed, threads, json_path);
        if (*swp) return run_sweep(config_path, seed, threads, csv_path, json_path);
        if (*est) return run_estimate(data_path, x0_text, config_path);
        if (*con) return run_constants(kernel_arg, c_q, c_d, c_l, c_z, c_tau);
        if (*rts) return run_rates(beta_text, p_text, partition_text, rates_n, r_beta_max, r_d_bar);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
