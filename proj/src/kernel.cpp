#include "adkde/kernel.hpp"

#include "adkde/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace adkde {

namespace {

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

} // namespace

BaseKernel make_default_base(int l) {
    if (l < 2) throw std::invalid_argument("base kernel order must be >= 2");
    double a = 1.0 / (2.0 * l);
    BaseKernel b;
    b.order = l;
    b.support_halfwidth = a;
    b.lipschitz_bound = 1.0 / (a * a);
    b.u = [a](double z) { return (1.0 / a) * std::max(0.0, 1.0 - std::abs(z) / a); };
    b.piecewise_linear = true;
    b.breakpoints = {-a, 0.0, a};
    return b;
}

HigherOrderKernel::HigherOrderKernel(BaseKernel base)
    : base_(std::move(base)), l_(base_.order) {
    if (l_ < 2) throw std::invalid_argument("kernel order must be >= 2");
    if (!base_.u) throw std::invalid_argument("base kernel has no evaluator");

    term_weight_.resize(static_cast<size_t>(l_));
    for (int i = 1; i <= l_; ++i) {
        double sign = (i % 2 == 1) ? 1.0 : -1.0;
        term_weight_[static_cast<size_t>(i - 1)] = binomial(l_, i) * sign / i;
    }

    if (base_.piecewise_linear && !base_.breakpoints.empty()) {
        // u(z/i) = u(0) * max(0, 1 - |z| / (i*a)); fold everything per term.
        double a = base_.support_halfwidth;
        double u0 = base_.u(0.0);
        for (int i = 1; i <= l_; ++i) {
            profile_coeff_.push_back(term_weight_[static_cast<size_t>(i - 1)] * u0);
            profile_slope_.push_back(1.0 / (i * a));
        }
        // Breakpoints of u_l: all i-dilations of the base breakpoints.
        std::set<double> pts{-0.5, 0.5};
        for (int i = 1; i <= l_; ++i)
            for (double t : base_.breakpoints) pts.insert(i * t);
        std::vector<double> bp(pts.begin(), pts.end());
        // Exact piecewise-linear constants from segment endpoints.
        double sup = 0, lip = 0, l1 = 0;
        std::vector<double> vals(bp.size());
        for (size_t k = 0; k < bp.size(); ++k) {
            vals[k] = (*this)(bp[k]);
            sup = std::max(sup, std::abs(vals[k]));
        }
        for (size_t k = 1; k < bp.size(); ++k) {
            double w = bp[k] - bp[k - 1];
            if (w <= 0) continue;
            double y0 = vals[k - 1], y1 = vals[k];
            lip = std::max(lip, std::abs(y1 - y0) / w);
            if (y0 * y1 >= 0) {
                l1 += 0.5 * (std::abs(y0) + std::abs(y1)) * w;
            } else {
                double t = w * y0 / (y0 - y1);     // distance to the zero crossing
                l1 += 0.5 * (std::abs(y0) * t + std::abs(y1) * (w - t));
            }
        }
        sup_norm_ = sup;
        lipschitz_ = lip;
        l1_norm_ = l1;
    } else {
        // Dense scan with 1% headroom; quadrature for the L1 norm.
        const int npts = 100000;
        double sup = 0, lip = 0;
        double prev_z = -0.5, prev_v = (*this)(prev_z);
        sup = std::abs(prev_v);
        for (int k = 1; k <= npts; ++k) {
            double z = -0.5 + k * (1.0 / npts);
            double v = (*this)(z);
            sup = std::max(sup, std::abs(v));
            lip = std::max(lip, std::abs(v - prev_v) / (z - prev_z));
            prev_z = z;
            prev_v = v;
        }
        sup_norm_ = sup * 1.01;
        lipschitz_ = lip * 1.01;
        l1_norm_ = integrate([this](double z) { return std::abs((*this)(z)); },
                             -0.5, 0.5, 1e-10);
    }
}

double HigherOrderKernel::operator()(double z) const {
    if (std::abs(z) > 0.5) return 0.0;
    double s = 0.0;
    for (int i = 1; i <= l_; ++i)
        s += term_weight_[static_cast<size_t>(i - 1)] * base_.u(z / i);
    return s;
}

double eval_ul(const HigherOrderKernel& kernel, double z) { return kernel(z); }

double product_kernel_eval(const HigherOrderKernel& kernel,
                           const std::vector<double>& h,
                           const std::vector<double>& v) {
    if (h.size() != v.size())
        throw std::invalid_argument("product_kernel_eval: size mismatch");
    double vol = 1.0, prod = 1.0;
    for (size_t i = 0; i < h.size(); ++i) {
        if (!(h[i] > 0.0))
            throw std::invalid_argument("product_kernel_eval: nonpositive bandwidth");
        vol *= h[i];
        prod *= kernel(v[i] / h[i]);
    }
    return prod / vol;
}

double moment(const HigherOrderKernel& kernel, int k, int quadrature_points) {
    if (k < 0) throw std::invalid_argument("moment: negative order");
    if (quadrature_points < 16)
        throw std::invalid_argument("moment: need at least 16 quadrature points");
    auto f = [&](double z) { return std::pow(z, k) * kernel(z); };
    // Initial uniform panels, adaptive Simpson inside each.
    double total = 0.0;
    double lo = -0.5, hi = 0.5;
    int panels = quadrature_points;
    for (int i = 0; i < panels; ++i) {
        double a = lo + (hi - lo) * i / panels;
        double b = lo + (hi - lo) * (i + 1) / panels;
        total += integrate(f, a, b, 1e-12 / panels);
    }
    return total;
}

} // namespace adkde
