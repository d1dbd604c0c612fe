#ifndef ADKDE_REPORT_HPP
#define ADKDE_REPORT_HPP

#include "adkde/constants.hpp"
#include "adkde/mc.hpp"
#include "adkde/rates.hpp"
#include "adkde/selection.hpp"

#include "json.hpp"

#include <string>

namespace adkde {

// JSON shapes are part of the reproducibility contract: no timing fields,
// container order fixed, so (config, seed) gives byte-identical dumps.
void to_json(nlohmann::json& j, const CandidateTrace& t);
void to_json(nlohmann::json& j, const SelectionResult& r);
void to_json(nlohmann::json& j, const SlopeFit& f);
void to_json(nlohmann::json& j, const RiskPoint& p);
void to_json(nlohmann::json& j, const RiskReport& r);
void to_json(nlohmann::json& j, const ConstantsTable& t);
void to_json(nlohmann::json& j, const RateReport& r);
void to_json(nlohmann::json& j, const PairedComparison& c);

//! 17 significant digits (%.17g): enough to round-trip a double, and the
//! same bytes on every run.
std::string csv_double(double v);

//! One row per n: n, risk, stderr, replications, mean_h_i..., then one
//! selection-count column per partition (RFC-4180 quoting where needed).
std::string sweep_csv(const RiskReport& rep);

//! sup/L1/Lipschitz norms plus the moment table of the order-l kernel.
std::string kernel_csv(const HigherOrderKernel& kernel);

} // namespace adkde

#endif
