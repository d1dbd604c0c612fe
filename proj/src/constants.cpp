#include "adkde/constants.hpp"

#include "adkde/numeric.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace adkde {

namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

double pos(double x) { return x > 0.0 ? x : 0.0; }

//! Max of g over [lo,hi]: log-spaced scan then golden refinement around the
//! best grid point (handles the sup sitting at the left endpoint).
double sup_on_log_grid(const std::function<double(double)>& g, double lo, double hi,
                       int points) {
    const double llo = std::log(lo), lhi = std::log(hi);
    double best = -1.0;
    int best_i = 0;
    for (int i = 0; i < points; ++i) {
        const double x = std::exp(llo + (lhi - llo) * i / (points - 1));
        const double v = g(x);
        if (v > best) {
            best = v;
            best_i = i;
        }
    }
    const auto grid_x = [&](int i) {
        return std::exp(llo + (lhi - llo) * i / (points - 1));
    };
    const double a = grid_x(best_i > 0 ? best_i - 1 : 0);
    const double b = grid_x(best_i < points - 1 ? best_i + 1 : points - 1);
    if (a < b) {
        const double refined = g(golden_max(g, a, b, 1e-8));
        if (refined > best) best = refined;
    }
    return best;
}

} // namespace

double delta_star() {
    static const double root = [] {
        const auto f = [](double d) { return 8.0 * kPi2 * d * (1.0 + std::pow(std::log(d), 2)) - 1.0; };
        return bisect_root(f, 1e-8, 1.0, 1e-14);
    }();
    return root;
}

double s_star(double delta) {
    const double ld = std::log(delta);
    return (6.0 / kPi2) / (1.0 + ld * ld);
}

double c_s(int s) {
    if (s < 1) throw std::invalid_argument("c_s: s must be >= 1");
    const double ds = delta_star();
    const auto g1 = [s](double delta) {
        const double ss = s_star(delta);
        return pos(1.0 + std::log(9216.0 * (s + 1) * delta * delta / (ss * ss))) / (delta * delta);
    };
    const auto g2 = [s](double delta) {
        const double ss = s_star(delta);
        return pos(1.0 + std::log(9216.0 * (s + 1) * delta / ss)) / (delta * delta);
    };
    // Both integrands decay like ln(delta)/delta^2, so [delta*, 10] brackets the sup.
    const double sup1 = sup_on_log_grid(g1, ds, 10.0, 20000);
    const double sup2 = sup_on_log_grid(g2, ds, 10.0, 20000);
    return s * sup1 + s * sup2;
}

double c_s1_q(int s, int q) {
    if (s < 1 || q < 1) throw std::invalid_argument("c_s1_q: need s >= 1 and q >= 1");
    const double ds = delta_star();
    const double v = 144.0 * s / (ds * ds) + 5.0 * q + 3.0 + 36.0 * c_s(s);
    return v > 1.0 ? v : 1.0;
}

double lambda_s_q(int s, int q, const HigherOrderKernel& kernel) {
    if (s < 1 || q < 1) throw std::invalid_argument("lambda_s_q: need s >= 1 and q >= 1");
    const double kinf = kernel.sup_norm();
    const double lk = kernel.lipschitz();
    const double e = std::numbers::e;
    const double front = std::max(10.0 * s * std::exp(double(s)) + 10.0 * s * e * lk / kinf,
                                  48.0 * e);
    const double kinf_s = std::pow(kinf, s);
    const double bracket = std::sqrt(7.0) + 7.0 * std::sqrt((1.0 + q) * kinf_s);
    return front * bracket * c_s1_q(s, q) * kinf_s;
}

double lambda_s_q_z(int s, int q, const HigherOrderKernel& kernel, double z,
                    double tau_floor) {
    if (!(tau_floor > 0.0) || tau_floor > 1.0)
        throw std::invalid_argument("lambda_s_q_z: tau_floor must lie in (0,1]");
    if (!(z > 0.0)) throw std::invalid_argument("lambda_s_q_z: z must be positive");
    const double zf = z > 1.0 ? z : 1.0;
    return std::sqrt(3.0 * q + s * q * zf * (1.0 + 1.0 / tau_floor)) *
           lambda_s_q(s, q, kernel);
}

ConstantsTable build_table(int q, int d, const HigherOrderKernel& kernel, double z,
                           double tau_floor) {
    if (d < 1) throw std::invalid_argument("build_table: d must be >= 1");
    ConstantsTable t;
    t.q = q;
    t.d = d;
    t.z = z;
    t.tau_floor = tau_floor;
    t.delta_star = delta_star();
    t.kernel_sup = kernel.sup_norm();
    t.kernel_l1 = kernel.l1_norm();
    t.kernel_lipschitz = kernel.lipschitz();
    double lam = 1.0;
    for (int s = 1; s <= d; ++s) {
        t.c_s.push_back(c_s(s));
        t.c_s1.push_back(c_s1_q(s, 2 * q));
        const double ls = lambda_s_q_z(s, 2 * q, kernel, z, tau_floor);
        t.lambda_s.push_back(ls);
        if (ls > lam) lam = ls;
    }
    t.lambda = lam;
    const double root = 2.0 * lam * std::sqrt(1.0 + 2.0 * q);
    t.a = 1.0 / (root * root);
    return t;
}

} // namespace adkde
