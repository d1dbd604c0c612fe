#ifndef ADKDE_CONSTANTS_HPP
#define ADKDE_CONSTANTS_HPP

#include "adkde/kernel.hpp"

#include <vector>

namespace adkde {

//! The threshold-constant pipeline. Values are astronomically large by design;
//! the selection rule can run either on this table ("theory" mode) or on a
//! user calibration ("practical" mode, see selection module).
struct ConstantsTable {
    int q = 1;
    int d = 1;
    double z = 1.0;          // grid expansion exponent
    double tau_floor = 1.0;  // smallest tau(s) in use
    double delta_star = 0.0;
    std::vector<double> c_s;       // index s-1, s = 1..d
    std::vector<double> c_s1;      // C_{s,1}^{(2q)}
    std::vector<double> lambda_s;  // lambda_s^{(2q)}[K, z]
    double lambda = 1.0;           // 1 ∨ max_s lambda_s
    double a = 1.0;                // (2 lambda sqrt(1+2q))^{-2}
    double kernel_sup = 0.0, kernel_l1 = 0.0, kernel_lipschitz = 0.0;
};

//! Smallest root of 8 pi^2 delta (1 + ln^2 delta) = 1, by bisection on
//! [1e-8, 1] to 1e-14 relative bracket width. The map is nondecreasing
//! (derivative (1 + ln delta)^2), so the root is unique.
double delta_star();

//! s*(delta) = (6/pi^2) / (1 + ln^2 delta).
double s_star(double delta);

//! C_s: s times the sum of two suprema over delta in [delta*, 10], each of
//! (1/delta^2)[1 + ln(...)]_+; log-grid scan plus golden refinement.
double c_s(int s);

//! C_{s,1}^{(q)} = [144 s / delta*^2 + 5q + 3 + 36 C_s] ∨ 1.
double c_s1_q(int s, int q);

//! lambda_s^{(q)} = {(10 s e^s + 10 s e L_K/||K||_inf) ∨ 48e}
//!                  [sqrt(7) + 7 sqrt((1+q)||K||_inf^s)] C_{s,1}^{(q)} ||K||_inf^s.
double lambda_s_q(int s, int q, const HigherOrderKernel& kernel);

//! lambda_s^{(q)}[K,z] = {3q + s q (1 ∨ z)(1 + 1/tau_floor)}^{1/2} lambda_s^{(q)}.
double lambda_s_q_z(int s, int q, const HigherOrderKernel& kernel, double z,
                    double tau_floor);

//! Full table: lambda = 1 ∨ max_{s=1..d} lambda_s^{(2q)}[K,z], a from lambda.
ConstantsTable build_table(int q, int d, const HigherOrderKernel& kernel, double z,
                           double tau_floor);

} // namespace adkde

#endif
