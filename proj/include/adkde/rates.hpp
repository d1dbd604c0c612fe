#ifndef ADKDE_RATES_HPP
#define ADKDE_RATES_HPP

#include "adkde/estimators.hpp"
#include "adkde/partition.hpp"

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace adkde {

//! p_i = infinity is first-class: 1/(beta_i * inf) contributes 0.
inline constexpr double kPInf = std::numeric_limits<double>::infinity();

//! gamma_I = (1 - sum_{i in I} 1/(beta_i p_i)) / (sum_{i in I} 1/beta_i).
double gamma_block(const std::vector<double>& beta, const std::vector<double>& p, IndexSet I);

//! r = min over blocks of P of gamma_I.
double rate_r(const std::vector<double>& beta, const std::vector<double>& p,
              const Partition& P);

//! phi_n = n^{-r/(2r+1)}.
double minimax_rate(const std::vector<double>& beta, const std::vector<double>& p,
                    const Partition& P, std::int64_t n);

//! rho_n = 1 when r <= 0, else phi_n.
double rho(const std::vector<double>& beta, const std::vector<double>& p,
           const Partition& P, std::int64_t n);

//! psi_n = (ln n / n)^{r/(2r+1)} for r < r_max, n^{-r_max/(2r_max+1)} at
//! r = r_max (no log factor at the boundary); r > r_max is outside the scale
//! and throws. Computed as phi_n * (ln n)^{r/(2r+1)} in the interior so the
//! psi/phi identity holds with no rounding slack. Equality r == r_max is
//! decided exactly when beta, p, beta_max, d_bar are small rationals, else to
//! 1e-12 relative tolerance.
double adaptive_rate(const std::vector<double>& beta, const std::vector<double>& p,
                     const Partition& P, std::int64_t n, double beta_max, double d_bar);

enum class RateRegime { inconsistent, minimax, adaptive_interior, adaptive_boundary };

const char* regime_name(RateRegime r);

struct RateReport {
    std::vector<double> gamma;  // per block of P, canonical order
    double r = 0.0;
    double r_max = 0.0;
    RateRegime regime = RateRegime::minimax;
    double phi_n = 1.0;
    double rho_n = 1.0;
    double psi_n = 1.0;  // NaN when r > r_max (outside the adaptive scale)
};

RateReport rate_report(const std::vector<double>& beta, const std::vector<double>& p,
                       const Partition& P, std::int64_t n, double beta_max, double d_bar);

//! Per-block closed form h_i = n^{-(gamma_I/(2 gamma_I+1))/beta_i(I)} with
//! beta_i(I) = kappa(I) beta_i / kappa_i(I); throws when r <= 0 (no consistent
//! estimator) and self-checks the balance identity
//! h_i^{beta_i(I)} = (n V_{h_I})^{-1/2} to 1e-10.
Bandwidth minimax_bandwidth(const std::vector<double>& beta, const std::vector<double>& p,
                            const Partition& P, std::int64_t n);

//! Largest 2^{-k} <= x (k >= 0 integer); x in (0,1].
double largest_dyadic_leq(double x);

//! Anchor value: largest dyadic <= n^{-1/(2 beta_max + d_bar)}.
double adaptive_anchor(std::int64_t n, double beta_max, double d_bar);

//! Scale-aware balance solution h_i = L_i^{-1/beta_i(I)} (L(I) ln n / n)^{(gamma/(2gamma+1))/beta_i(I)}
//! with L(I) = prod L_i^{1/beta_i(I)}; raw values, not dyadic-projected.
//! Self-checks L_i h_i^{beta_i(I)} = sqrt(ln n / (n V_{h_I})) to 1e-10.
Bandwidth adaptive_bandwidth(const std::vector<double>& beta, const std::vector<double>& p,
                             const std::vector<double>& L, const Partition& P,
                             std::int64_t n);

} // namespace adkde

#endif
