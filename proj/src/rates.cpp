#include "adkde/rates.hpp"

#include <boost/rational.hpp>

#include <cmath>
#include <optional>
#include <stdexcept>

namespace adkde {

namespace {

using Rational = boost::rational<long long>;

void check_params(const std::vector<double>& beta, const std::vector<double>& p) {
    if (beta.size() != p.size())
        throw std::invalid_argument("rates: beta and p must have equal length");
    for (double b : beta)
        if (!(b > 0.0)) throw std::invalid_argument("rates: beta entries must be positive");
    for (double pi : p)
        if (!(pi >= 1.0)) throw std::invalid_argument("rates: p entries must be >= 1");
}

//! Exact small-rational reconstruction of a double (denominator <= 64),
//! nullopt when x is not exactly representable that way. Infinity maps to
//! the reserved 1/0 marker handled by the callers.
std::optional<Rational> to_rational(double x) {
    if (std::isinf(x)) return Rational(1, 1);  // callers special-case infinity first
    for (long long den = 1; den <= 64; ++den) {
        const double scaled = x * static_cast<double>(den);
        const double rounded = std::nearbyint(scaled);
        if (scaled == rounded && std::fabs(rounded) < 1e15)
            return Rational(static_cast<long long>(rounded), den);
    }
    return std::nullopt;
}

//! gamma_I in exact arithmetic; nullopt when any input resists small-rational
//! form (then callers fall back to double comparisons).
std::optional<Rational> gamma_block_exact(const std::vector<double>& beta,
                                          const std::vector<double>& p, IndexSet I) {
    Rational num(1), den(0);
    for (int i : set_indices(I)) {
        const auto b = to_rational(beta[static_cast<std::size_t>(i)]);
        if (!b || *b <= Rational(0)) return std::nullopt;
        den += Rational(1) / *b;
        if (!std::isinf(p[static_cast<std::size_t>(i)])) {
            const auto pi = to_rational(p[static_cast<std::size_t>(i)]);
            if (!pi || *pi <= Rational(0)) return std::nullopt;
            num -= Rational(1) / (*b * *pi);
        }
    }
    return num / den;
}

std::optional<Rational> rate_r_exact(const std::vector<double>& beta,
                                     const std::vector<double>& p, const Partition& P) {
    std::optional<Rational> r;
    for (IndexSet I : P.blocks()) {
        const auto g = gamma_block_exact(beta, p, I);
        if (!g) return std::nullopt;
        if (!r || *g < *r) r = g;
    }
    return r;
}

double kappa_set(const std::vector<double>& beta, const std::vector<double>& p, IndexSet I) {
    double k = 1.0;
    for (int i : set_indices(I)) {
        const std::size_t ui = static_cast<std::size_t>(i);
        if (!std::isinf(p[ui])) k -= 1.0 / (beta[ui] * p[ui]);
    }
    return k;
}

double kappa_i_set(const std::vector<double>& beta, const std::vector<double>& p,
                   IndexSet I, int i) {
    const double inv_pi = std::isinf(p[static_cast<std::size_t>(i)])
                              ? 0.0
                              : 1.0 / p[static_cast<std::size_t>(i)];
    double k = 1.0;
    for (int j : set_indices(I)) {
        const std::size_t uj = static_cast<std::size_t>(j);
        const double inv_pj = std::isinf(p[uj]) ? 0.0 : 1.0 / p[uj];
        k -= (inv_pj - inv_pi) / beta[uj];
    }
    return k;
}

//! beta_i(I) = kappa(I) beta_i / kappa_i(I).
double beta_i_set(const std::vector<double>& beta, const std::vector<double>& p,
                  IndexSet I, int i) {
    return kappa_set(beta, p, I) * beta[static_cast<std::size_t>(i)] /
           kappa_i_set(beta, p, I, i);
}

double exponent_of(double r) { return r / (2.0 * r + 1.0); }

} // namespace

double gamma_block(const std::vector<double>& beta, const std::vector<double>& p, IndexSet I) {
    check_params(beta, p);
    if (I == 0) throw std::invalid_argument("gamma_block: empty index set");
    double num = 1.0, den = 0.0;
    for (int i : set_indices(I)) {
        const std::size_t ui = static_cast<std::size_t>(i);
        den += 1.0 / beta[ui];
        if (!std::isinf(p[ui])) num -= 1.0 / (beta[ui] * p[ui]);
    }
    return num / den;
}

double rate_r(const std::vector<double>& beta, const std::vector<double>& p,
              const Partition& P) {
    double r = std::numeric_limits<double>::infinity();
    for (IndexSet I : P.blocks()) r = std::min(r, gamma_block(beta, p, I));
    return r;
}

double minimax_rate(const std::vector<double>& beta, const std::vector<double>& p,
                    const Partition& P, std::int64_t n) {
    if (n < 3) throw std::invalid_argument("minimax_rate: n must be >= 3");
    const double r = rate_r(beta, p, P);
    return std::pow(static_cast<double>(n), -exponent_of(r));
}

double rho(const std::vector<double>& beta, const std::vector<double>& p,
           const Partition& P, std::int64_t n) {
    const double r = rate_r(beta, p, P);
    if (r <= 0.0) return 1.0;
    return minimax_rate(beta, p, P, n);
}

namespace {

bool rates_equal(const std::vector<double>& beta, const std::vector<double>& p,
                 const Partition& P, double r, double beta_max, double d_bar) {
    const auto re = rate_r_exact(beta, p, P);
    const auto bm = to_rational(beta_max);
    const auto db = to_rational(d_bar);
    if (re && bm && db && !std::isinf(beta_max) && !std::isinf(d_bar) &&
        *db != Rational(0))
        return *re == *bm / *db;
    const double rm = beta_max / d_bar;
    return std::fabs(r - rm) <= 1e-12 * std::max(1.0, std::fabs(rm));
}

} // namespace

double adaptive_rate(const std::vector<double>& beta, const std::vector<double>& p,
                     const Partition& P, std::int64_t n, double beta_max, double d_bar) {
    if (n < 3) throw std::invalid_argument("adaptive_rate: n must be >= 3");
    if (!(beta_max > 0.0) || !(d_bar > 0.0))
        throw std::invalid_argument("adaptive_rate: beta_max and d_bar must be positive");
    const double r = rate_r(beta, p, P);
    const double rm = beta_max / d_bar;
    if (rates_equal(beta, p, P, r, beta_max, d_bar))
        return std::pow(static_cast<double>(n), -exponent_of(rm));
    if (r > rm)
        throw std::invalid_argument("adaptive_rate: r exceeds r_max, outside the scale");
    return minimax_rate(beta, p, P, n) * std::pow(std::log(static_cast<double>(n)), exponent_of(r));
}

const char* regime_name(RateRegime r) {
    switch (r) {
        case RateRegime::inconsistent: return "inconsistent";
        case RateRegime::minimax: return "minimax";
        case RateRegime::adaptive_interior: return "adaptive-interior";
        case RateRegime::adaptive_boundary: return "adaptive-boundary";
    }
    return "?";
}

RateReport rate_report(const std::vector<double>& beta, const std::vector<double>& p,
                       const Partition& P, std::int64_t n, double beta_max, double d_bar) {
    RateReport rep;
    for (IndexSet I : P.blocks()) rep.gamma.push_back(gamma_block(beta, p, I));
    rep.r = rate_r(beta, p, P);
    rep.r_max = beta_max / d_bar;
    rep.phi_n = minimax_rate(beta, p, P, n);
    rep.rho_n = rho(beta, p, P, n);
    if (rep.r <= 0.0) {
        rep.regime = RateRegime::inconsistent;
        rep.psi_n = 1.0;
    } else if (rates_equal(beta, p, P, rep.r, beta_max, d_bar)) {
        rep.regime = RateRegime::adaptive_boundary;
        rep.psi_n = adaptive_rate(beta, p, P, n, beta_max, d_bar);
    } else if (rep.r < rep.r_max) {
        rep.regime = RateRegime::adaptive_interior;
        rep.psi_n = adaptive_rate(beta, p, P, n, beta_max, d_bar);
    } else {
        rep.regime = RateRegime::minimax;
        rep.psi_n = std::numeric_limits<double>::quiet_NaN();
    }
    return rep;
}

Bandwidth minimax_bandwidth(const std::vector<double>& beta, const std::vector<double>& p,
                            const Partition& P, std::int64_t n) {
    check_params(beta, p);
    if (static_cast<int>(beta.size()) != P.dimension())
        throw std::invalid_argument("minimax_bandwidth: dimension mismatch");
    const double r = rate_r(beta, p, P);
    if (r <= 0.0)
        throw std::invalid_argument(
            "minimax_bandwidth: r <= 0, no consistent estimator in this regime");
    Bandwidth h(beta.size(), 0.0);
    const double nd = static_cast<double>(n);
    for (IndexSet I : P.blocks()) {
        const double g = gamma_block(beta, p, I);
        const double e = exponent_of(g);
        for (int i : set_indices(I))
            h[static_cast<std::size_t>(i)] = std::pow(nd, -e / beta_i_set(beta, p, I, i));
        // Balance self-check: h_i^{beta_i(I)} = (n V_{h_I})^{-1/2} for all i in I.
        const double target = 1.0 / std::sqrt(nd * block_volume(h, I));
        for (int i : set_indices(I)) {
            const double lhs = std::pow(h[static_cast<std::size_t>(i)],
                                        beta_i_set(beta, p, I, i));
            if (std::fabs(lhs - target) > 1e-10 * std::max(1.0, target))
                throw std::logic_error("minimax_bandwidth: balance identity violated");
        }
    }
    return h;
}

double largest_dyadic_leq(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("largest_dyadic_leq: x must be positive");
    if (x >= 1.0) return 1.0;
    // 1e-12 relative slack absorbs pow() rounding, e.g. 8^{-1/3} evaluating
    // one ulp under 0.5 must still project to 1/2.
    const double xs = x * (1.0 + 1e-12);
    int k = static_cast<int>(std::ceil(-std::log2(xs)));
    double v = std::ldexp(1.0, -k);
    while (v > xs) v *= 0.5;
    while (v * 2.0 <= xs) v *= 2.0;
    return v;
}

double adaptive_anchor(std::int64_t n, double beta_max, double d_bar) {
    if (n < 3) throw std::invalid_argument("adaptive_anchor: n must be >= 3");
    const double raw = std::pow(static_cast<double>(n), -1.0 / (2.0 * beta_max + d_bar));
    return largest_dyadic_leq(raw);
}

Bandwidth adaptive_bandwidth(const std::vector<double>& beta, const std::vector<double>& p,
                             const std::vector<double>& L, const Partition& P,
                             std::int64_t n) {
    check_params(beta, p);
    if (L.size() != beta.size())
        throw std::invalid_argument("adaptive_bandwidth: L and beta must have equal length");
    for (double li : L)
        if (!(li > 0.0)) throw std::invalid_argument("adaptive_bandwidth: L entries must be positive");
    if (n < 3) throw std::invalid_argument("adaptive_bandwidth: n must be >= 3");
    const double r = rate_r(beta, p, P);
    if (r <= 0.0)
        throw std::invalid_argument("adaptive_bandwidth: r <= 0, no consistent estimator");

    Bandwidth h(beta.size(), 0.0);
    const double lnn_over_n = std::log(static_cast<double>(n)) / static_cast<double>(n);
    for (IndexSet I : P.blocks()) {
        const double g = gamma_block(beta, p, I);
        const double e = exponent_of(g);
        double l_of_i = 1.0;
        for (int i : set_indices(I))
            l_of_i *= std::pow(L[static_cast<std::size_t>(i)],
                               1.0 / beta_i_set(beta, p, I, i));
        const double core = l_of_i * lnn_over_n;
        for (int i : set_indices(I)) {
            const double bi = beta_i_set(beta, p, I, i);
            h[static_cast<std::size_t>(i)] =
                std::pow(L[static_cast<std::size_t>(i)], -1.0 / bi) * std::pow(core, e / bi);
        }
        // Balance self-check: L_i h_i^{beta_i(I)} = sqrt(ln n / (n V_{h_I})).
        const double target = std::sqrt(lnn_over_n / block_volume(h, I));
        for (int i : set_indices(I)) {
            const std::size_t ui = static_cast<std::size_t>(i);
            const double lhs = L[ui] * std::pow(h[ui], beta_i_set(beta, p, I, i));
            if (std::fabs(lhs - target) > 1e-10 * std::max(1.0, target))
                throw std::logic_error("adaptive_bandwidth: balance identity violated");
        }
    }
    return h;
}

} // namespace adkde
