#include "adkde/numeric.hpp"

#include <cmath>
#include <stdexcept>

namespace adkde {

namespace {

double simpson(double fa, double fm, double fb, double a, double b) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double b,
             double fa, double fm, double fb, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = simpson(fa, flm, fm, a, m);
    double right = simpson(fm, frm, fb, m, b);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, int max_depth) {
    if (!(a <= b)) throw std::invalid_argument("integrate: empty interval");
    if (a == b) return 0.0;
    double m = 0.5 * (a + b);
    double fa = f(a), fm = f(m), fb = f(b);
    return adapt(f, a, b, fa, fm, fb, simpson(fa, fm, fb, a, b), abs_tol, max_depth);
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   double rel_width) {
    if (!(lo < hi)) throw std::invalid_argument("bisect_root: bad bracket");
    double flo = f(lo), fhi = f(hi);
    if (flo > 0.0 || fhi < 0.0)
        throw std::invalid_argument("bisect_root: no sign change on bracket");
    while ((hi - lo) > rel_width * std::abs(hi)) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (f(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double golden_max(const std::function<double(double)>& f, double lo, double hi,
                  double rel_tol) {
    const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while ((b - a) > rel_tol * std::max(std::abs(a), std::abs(b))) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

} // namespace adkde
