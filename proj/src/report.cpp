#include "adkde/report.hpp"

#include <cstdio>
#include <stdexcept>

namespace adkde {

using nlohmann::json;

void to_json(json& j, const CandidateTrace& t) {
    j = json{{"delta_hat", t.delta_hat}, {"u_hat", t.u_hat}, {"criterion", t.criterion}};
}

void to_json(json& j, const SelectionResult& r) {
    j = json{{"index", r.index},
             {"h", r.h},
             {"partition", format_partition(r.P)},
             {"estimate", r.estimate},
             {"g_bar", r.g_bar},
             {"lambda", r.lambda},
             {"candidate_count", r.candidate_count},
             {"cache_hits", r.cache_hits},
             {"cache_misses", r.cache_misses},
             {"trace", r.trace}};
}

void to_json(json& j, const SlopeFit& f) {
    j = json{{"slope", f.slope},
             {"intercept", f.intercept},
             {"std_error", f.std_error},
             {"ci_lo", f.ci_lo},
             {"ci_hi", f.ci_hi}};
}

void to_json(json& j, const RiskPoint& p) {
    json freq = json::array();
    for (const auto& [name, count] : p.partition_freq)
        freq.push_back(json{{"partition", name}, {"count", count}});
    j = json{{"n", p.n},
             {"replications", p.replications},
             {"risk", p.risk},
             {"std_error", p.std_error},
             {"mean_h", p.mean_h},
             {"partition_freq", freq}};
}

void to_json(json& j, const RiskReport& r) {
    j = json{{"points", r.points}};
    j["slope"] = r.slope ? json(*r.slope) : json(nullptr);
}

void to_json(json& j, const ConstantsTable& t) {
    j = json{{"q", t.q},
             {"d", t.d},
             {"z", t.z},
             {"tau_floor", t.tau_floor},
             {"delta_star", t.delta_star},
             {"c_s", t.c_s},
             {"c_s1", t.c_s1},
             {"lambda_s", t.lambda_s},
             {"lambda", t.lambda},
             {"a", t.a},
             {"kernel_sup", t.kernel_sup},
             {"kernel_l1", t.kernel_l1},
             {"kernel_lipschitz", t.kernel_lipschitz}};
}

void to_json(json& j, const RateReport& r) {
    // psi_n is NaN outside the adaptive scale; nlohmann dumps that as null.
    j = json{{"gamma", r.gamma},
             {"r", r.r},
             {"r_max", r.r_max},
             {"regime", regime_name(r.regime)},
             {"phi_n", r.phi_n},
             {"rho_n", r.rho_n},
             {"psi_n", r.psi_n}};
}

void to_json(json& j, const PairedComparison& c) {
    j = json{{"selected", c.selected},
             {"forced", c.forced},
             {"mean_diff", c.mean_diff},
             {"t_stat", c.t_stat},
             {"p_value", c.p_value}};
}

std::string csv_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

} // namespace

std::string sweep_csv(const RiskReport& rep) {
    if (rep.points.empty()) throw std::invalid_argument("sweep_csv: no points");
    const RiskPoint& first = rep.points.front();
    std::string out = "n,risk,stderr,replications";
    for (std::size_t i = 0; i < first.mean_h.size(); ++i)
        out += ",mean_h_" + std::to_string(i + 1);
    for (const auto& [name, count] : first.partition_freq) {
        (void)count;
        out += "," + csv_field("freq_" + name);
    }
    out += '\n';
    for (const RiskPoint& p : rep.points) {
        if (p.mean_h.size() != first.mean_h.size() ||
            p.partition_freq.size() != first.partition_freq.size())
            throw std::invalid_argument("sweep_csv: points have mismatched shapes");
        out += std::to_string(p.n);
        out += ',' + csv_double(p.risk);
        out += ',' + csv_double(p.std_error);
        out += ',' + std::to_string(p.replications);
        for (double h : p.mean_h) out += ',' + csv_double(h);
        for (const auto& [name, count] : p.partition_freq) {
            (void)name;
            out += ',' + std::to_string(count);
        }
        out += '\n';
    }
    return out;
}

std::string kernel_csv(const HigherOrderKernel& kernel) {
    std::string out = "quantity,value\n";
    out += "order," + std::to_string(kernel.order()) + "\n";
    out += "sup_norm," + csv_double(kernel.sup_norm()) + "\n";
    out += "l1_norm," + csv_double(kernel.l1_norm()) + "\n";
    out += "lipschitz," + csv_double(kernel.lipschitz()) + "\n";
    for (int k = 0; k <= kernel.order(); ++k)
        out += "moment_" + std::to_string(k) + "," + csv_double(moment(kernel, k, 64)) + "\n";
    return out;
}

} // namespace adkde
