#ifndef ADKDE_CONFIG_HPP
#define ADKDE_CONFIG_HPP

#include "adkde/density.hpp"
#include "adkde/estimators.hpp"
#include "adkde/selection.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace adkde {

//! One experiment, parsed from a key=value file ('#' comments). Keys are
//! documented in the README; unknown keys are rejected to catch typos.
struct ExperimentConfig {
    // model
    std::string density = "example1";  // example1 | gaussian
    int d = 1;
    double sigma = 1.0;
    std::vector<double> x0;

    // risk / replication
    int q = 2;
    std::vector<std::int64_t> n_values;
    int replications = 2;
    std::uint64_t seed = 1;

    // estimator family
    int l = 2;
    double beta_max = 1.0;
    std::optional<int> d0_cap;
    std::string mode = "practical";  // practical | theory
    double lambda_scale = 1.0;
    std::optional<double> grid_tau;       // nullopt = auto: 2 beta_max/(2 beta_max + d_bar)
    std::optional<double> grid_z;         // nullopt = auto: 1/(2 beta_max)
    std::optional<Bandwidth> anchors;     // nullopt = auto: dyadic anchor from n
    std::string hbar = "dyadic:8";        // dyadic:<levels> | list:v[;v...]
    std::string pbar = "all";             // all | list:p[;p...]
};

ExperimentConfig parse_config_file(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text, const std::string& origin);

//! Model named by the config.
std::unique_ptr<Density> make_density(const ExperimentConfig& cfg);

//! The candidate bandwidth list H-bar. "dyadic:L" yields the isotropic vectors
//! (2^-1,...),...,(2^-L,...); "list:" entries are ';'-separated, each a single
//! value (isotropic) or d comma-separated values.
std::vector<Bandwidth> make_hbar(const ExperimentConfig& cfg);

//! The partition list P-bar ("all" honors d0_cap).
std::vector<Partition> make_pbar(const ExperimentConfig& cfg);

//! Smallest max-block size over P-bar (the d-bar of the scale).
int d_bar_of(const std::vector<Partition>& pbar);

//! Grid for one n: anchors, tau, z from the config (auto rules above), a from
//! the calibration mode.
GridConfig make_grid(const ExperimentConfig& cfg, std::int64_t n,
                     const std::vector<Partition>& pbar, const HigherOrderKernel& kernel);

//! lambda_effective: the theory table's lambda, or lambda_scale in practical mode.
double lambda_effective(const ExperimentConfig& cfg, const HigherOrderKernel& kernel,
                        int d_bar);

} // namespace adkde

#endif
