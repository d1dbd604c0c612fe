#ifndef ADKDE_DENSITY_HPP
#define ADKDE_DENSITY_HPP

#include "adkde/rng.hpp"
#include "adkde/sample.hpp"

#include <memory>
#include <vector>

namespace adkde {

//! Synthetic model with exact evaluation and inverse-CDF/transform sampling.
class Density {
public:
    virtual ~Density() = default;
    virtual int dim() const = 0;
    virtual double eval(const std::vector<double>& x) const = 0;
    //! Fill one observation (dim() values), consuming draws from rng.
    virtual void draw(CounterRng& rng, double* out) const = 0;
};

//! The piecewise-linear benchmark marginal on [0,1]:
//! f(t) = (64/15) { 4t on [0,1/8], 3/4-2t on [1/8,1/4], 1/4 on [1/4,3/4], 1-t on [3/4,1] },
//! zero outside. Exact piecewise-quadratic CDF, inverted per segment.
double bench_marginal_eval(double t);
double bench_marginal_cdf(double t);
double bench_marginal_quantile(double u);

//! d independent copies of the benchmark marginal.
std::unique_ptr<Density> make_example1(int d);

//! Product of d centered normals with common scale sigma.
std::unique_ptr<Density> make_gaussian(double sigma, int d);

//! Product of caller-supplied 1-d marginals.
std::unique_ptr<Density> make_product(std::vector<std::unique_ptr<Density>> marginals);

//! n rows drawn from the model on the given stream of the master seed.
SampleMatrix sample(const Density& model, std::int64_t n, std::uint64_t master_seed,
                    std::uint64_t stream = 0);

} // namespace adkde

#endif
