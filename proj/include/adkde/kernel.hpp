#ifndef ADKDE_KERNEL_HPP
#define ADKDE_KERNEL_HPP

#include <functional>
#include <vector>

namespace adkde {

//! Symmetric Lipschitz base bump u with supp(u) in [-1/(2l), 1/(2l)].
struct BaseKernel {
    int order = 2;                      // the l the support width was sized for
    double support_halfwidth = 0.25;    // 1/(2l)
    double lipschitz_bound = 16.0;
    std::function<double(double)> u;
    bool piecewise_linear = false;      // enables exact constants + SIMD profile
    std::vector<double> breakpoints;    // ascending, only if piecewise_linear
};

//! Triangular bump u(z) = (1/a) max(0, 1-|z|/a), a = 1/(2l).
BaseKernel make_default_base(int l);

//! K = u_l of the binomial construction: vanishing moments k = 1..l-1,
//! support in [-1/2, 1/2]. Norms and the Lipschitz constant are computed at
//! construction (exactly for piecewise-linear bases, by dense scan with a 1%
//! headroom factor otherwise).
class HigherOrderKernel {
public:
    explicit HigherOrderKernel(BaseKernel base);

    int order() const { return l_; }
    const BaseKernel& base() const { return base_; }
    double sup_norm() const { return sup_norm_; }
    double l1_norm() const { return l1_norm_; }
    double lipschitz() const { return lipschitz_; }

    double operator()(double z) const;

    //! K(z) = sum_i coeff[i] * max(0, 1 - |z|*slope[i]) when the base is
    //! piecewise-linear triangular; the row-sum backends consume this form.
    bool has_linear_profile() const { return !profile_coeff_.empty(); }
    const std::vector<double>& profile_coeff() const { return profile_coeff_; }
    const std::vector<double>& profile_slope() const { return profile_slope_; }

private:
    BaseKernel base_;
    int l_;
    double sup_norm_ = 0, l1_norm_ = 0, lipschitz_ = 0;
    std::vector<double> profile_coeff_, profile_slope_;
    std::vector<double> term_weight_;   // C(l,i)(-1)^{i+1}/i for i=1..l
};

//! Termwise binomial-sum evaluation (same value as kernel(z)).
double eval_ul(const HigherOrderKernel& kernel, double z);

//! V^{-1} prod K(v_i/h_i) with V = prod h_i; h are the bandwidths of one block.
double product_kernel_eval(const HigherOrderKernel& kernel,
                           const std::vector<double>& h,
                           const std::vector<double>& v);

//! Quadrature of z^k K(z) over [-1/2,1/2]; quadrature_points sets the initial
//! subdivision (>= 16), refinement is adaptive to 1e-12 absolute.
double moment(const HigherOrderKernel& kernel, int k, int quadrature_points);

} // namespace adkde

#endif
