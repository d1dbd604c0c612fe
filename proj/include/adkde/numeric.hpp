#ifndef ADKDE_NUMERIC_HPP
#define ADKDE_NUMERIC_HPP

#include <functional>

namespace adkde {

//! Adaptive Simpson integral of f over [a,b] with absolute tolerance.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, int max_depth = 48);

//! Bisection root of a nondecreasing function with a sign change on [lo,hi];
//! runs until the bracket's relative width falls below rel_width.
double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   double rel_width);

//! Golden-section maximization of f on [lo,hi] to relative width rel_tol.
double golden_max(const std::function<double(double)>& f, double lo, double hi,
                  double rel_tol);

} // namespace adkde

#endif
