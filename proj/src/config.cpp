#include "adkde/config.hpp"

#include "adkde/constants.hpp"
#include "adkde/rates.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace adkde {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    std::size_t e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return {};
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

double parse_double(const std::string& v, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing junk");
        return x;
    } catch (const std::exception&) {
        throw std::runtime_error("config: bad numeric value for '" + key + "': " + v);
    }
}

std::int64_t parse_int(const std::string& v, const std::string& key) {
    const double x = parse_double(v, key);
    const auto i = static_cast<std::int64_t>(x);
    if (static_cast<double>(i) != x)
        throw std::runtime_error("config: '" + key + "' must be an integer, got " + v);
    return i;
}

std::vector<double> parse_list(const std::string& v, const std::string& key) {
    std::vector<double> out;
    for (const std::string& cell : split(v, ','))
        out.push_back(parse_double(cell, key));
    if (out.empty()) throw std::runtime_error("config: empty list for '" + key + "'");
    return out;
}

} // namespace

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin) {
    ExperimentConfig cfg;
    std::map<std::string, std::string> kv;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                                     ": expected key=value, got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                                     ": empty key or value");
        if (!kv.emplace(key, val).second)
            throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                                     ": duplicate key '" + key + "'");
    }

    const auto take = [&](const std::string& key) -> std::optional<std::string> {
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        std::string v = it->second;
        kv.erase(it);
        return v;
    };

    if (auto v = take("density")) cfg.density = *v;
    if (auto v = take("d")) cfg.d = static_cast<int>(parse_int(*v, "d"));
    if (auto v = take("sigma")) cfg.sigma = parse_double(*v, "sigma");
    if (auto v = take("x0")) cfg.x0 = parse_list(*v, "x0");
    if (auto v = take("q")) cfg.q = static_cast<int>(parse_int(*v, "q"));
    if (auto v = take("n")) {
        for (const std::string& cell : split(*v, ','))
            cfg.n_values.push_back(parse_int(cell, "n"));
    }
    if (auto v = take("replications"))
        cfg.replications = static_cast<int>(parse_int(*v, "replications"));
    if (auto v = take("seed"))
        cfg.seed = static_cast<std::uint64_t>(parse_int(*v, "seed"));
    if (auto v = take("l")) cfg.l = static_cast<int>(parse_int(*v, "l"));
    if (auto v = take("beta_max")) cfg.beta_max = parse_double(*v, "beta_max");
    if (auto v = take("d0_cap")) cfg.d0_cap = static_cast<int>(parse_int(*v, "d0_cap"));
    if (auto v = take("mode")) cfg.mode = *v;
    if (auto v = take("lambda_scale")) cfg.lambda_scale = parse_double(*v, "lambda_scale");
    if (auto v = take("grid.tau")) {
        if (*v != "auto") cfg.grid_tau = parse_double(*v, "grid.tau");
    }
    if (auto v = take("grid.z")) {
        if (*v != "auto") cfg.grid_z = parse_double(*v, "grid.z");
    }
    if (auto v = take("anchors")) {
        if (*v != "auto") cfg.anchors = parse_list(*v, "anchors");
    }
    if (auto v = take("hbar")) cfg.hbar = *v;
    if (auto v = take("pbar")) cfg.pbar = *v;

    if (!kv.empty())
        throw std::runtime_error(origin + ": unknown config key '" + kv.begin()->first + "'");

    if (cfg.density != "example1" && cfg.density != "gaussian")
        throw std::runtime_error("config: density must be example1 or gaussian");
    if (cfg.mode != "practical" && cfg.mode != "theory")
        throw std::runtime_error("config: mode must be practical or theory");
    if (cfg.d < 1) throw std::runtime_error("config: d must be >= 1");
    if (cfg.q < 1) throw std::runtime_error("config: q must be >= 1");
    if (cfg.l < 2) throw std::runtime_error("config: l must be >= 2");
    if (!(cfg.beta_max > 0.0)) throw std::runtime_error("config: beta_max must be positive");
    if (!(cfg.lambda_scale > 0.0))
        throw std::runtime_error("config: lambda_scale must be positive");
    if (cfg.replications < 2) throw std::runtime_error("config: replications must be >= 2");
    if (!cfg.x0.empty() && static_cast<int>(cfg.x0.size()) != cfg.d)
        throw std::runtime_error("config: x0 must have d entries");
    if (cfg.anchors && static_cast<int>(cfg.anchors->size()) != cfg.d)
        throw std::runtime_error("config: anchors must have d entries");
    for (std::int64_t n : cfg.n_values)
        if (n < 3) throw std::runtime_error("config: every n must be >= 3");
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path);
}

std::unique_ptr<Density> make_density(const ExperimentConfig& cfg) {
    if (cfg.density == "example1") return make_example1(cfg.d);
    return make_gaussian(cfg.sigma, cfg.d);
}

std::vector<Bandwidth> make_hbar(const ExperimentConfig& cfg) {
    std::vector<Bandwidth> out;
    if (cfg.hbar.rfind("dyadic:", 0) == 0) {
        const std::int64_t levels = parse_int(cfg.hbar.substr(7), "hbar");
        if (levels < 1 || levels > 40)
            throw std::runtime_error("config: hbar dyadic levels must lie in 1..40");
        for (int k = 1; k <= levels; ++k)
            out.emplace_back(static_cast<std::size_t>(cfg.d), std::ldexp(1.0, -k));
    } else if (cfg.hbar.rfind("list:", 0) == 0) {
        for (const std::string& entry : split(cfg.hbar.substr(5), ';')) {
            const std::vector<double> vals = parse_list(entry, "hbar");
            if (vals.size() == 1) {
                out.emplace_back(static_cast<std::size_t>(cfg.d), vals.front());
            } else if (static_cast<int>(vals.size()) == cfg.d) {
                out.push_back(vals);
            } else {
                throw std::runtime_error(
                    "config: hbar entries need 1 or d values, got '" + entry + "'");
            }
        }
    } else {
        throw std::runtime_error("config: hbar must be dyadic:<levels> or list:...");
    }
    for (const Bandwidth& h : out)
        for (double v : h)
            if (!(v > 0.0) || v > 1.0)
                throw std::runtime_error("config: hbar values must lie in (0,1]");
    return out;
}

std::vector<Partition> make_pbar(const ExperimentConfig& cfg) {
    if (cfg.pbar == "all") return enumerate_partitions(cfg.d, cfg.d0_cap);
    if (cfg.pbar.rfind("list:", 0) == 0) {
        std::vector<Partition> out;
        for (const std::string& entry : split(cfg.pbar.substr(5), ';'))
            out.push_back(parse_partition(entry, cfg.d));
        if (out.empty()) throw std::runtime_error("config: empty pbar list");
        return out;
    }
    throw std::runtime_error("config: pbar must be all or list:...");
}

int d_bar_of(const std::vector<Partition>& pbar) {
    if (pbar.empty()) throw std::invalid_argument("d_bar_of: no partitions");
    int d_bar = pbar.front().dimension();
    for (const Partition& p : pbar) d_bar = std::min(d_bar, p.max_block_size());
    return d_bar;
}

double lambda_effective(const ExperimentConfig& cfg, const HigherOrderKernel& kernel,
                        int d_bar) {
    if (cfg.mode == "practical") return cfg.lambda_scale;
    const double tau = cfg.grid_tau ? *cfg.grid_tau
                                    : 2.0 * cfg.beta_max / (2.0 * cfg.beta_max + d_bar);
    const double z = cfg.grid_z ? *cfg.grid_z : 1.0 / (2.0 * cfg.beta_max);
    return build_table(cfg.q, cfg.d, kernel, z, tau).lambda;
}

GridConfig make_grid(const ExperimentConfig& cfg, std::int64_t n,
                     const std::vector<Partition>& pbar, const HigherOrderKernel& kernel) {
    GridConfig grid;
    grid.n = n;
    const int d_bar = d_bar_of(pbar);

    if (cfg.anchors) {
        grid.default_anchor = *cfg.anchors;
    } else {
        const double a = adaptive_anchor(n, cfg.beta_max, d_bar);
        grid.default_anchor.assign(static_cast<std::size_t>(cfg.d), a);
    }

    const double tau = cfg.grid_tau ? *cfg.grid_tau
                                    : 2.0 * cfg.beta_max / (2.0 * cfg.beta_max + d_bar);
    if (!(tau > 0.0) || tau > 1.0)
        throw std::runtime_error("config: grid.tau must lie in (0,1]");
    grid.tau = [tau](int) { return tau; };
    grid.z = cfg.grid_z ? *cfg.grid_z : 1.0 / (2.0 * cfg.beta_max);

    const double lam = lambda_effective(cfg, kernel, d_bar);
    const double root = 2.0 * lam * std::sqrt(1.0 + 2.0 * cfg.q);
    grid.a_eff = 1.0 / (root * root);
    return grid;
}

} // namespace adkde
