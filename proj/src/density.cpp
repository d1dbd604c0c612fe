#include "adkde/density.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace adkde {

namespace {
constexpr double kScale = 64.0 / 15.0;
}

double bench_marginal_eval(double t) {
    if (t < 0.0 || t > 1.0) return 0.0;
    if (t <= 0.125) return kScale * 4.0 * t;
    if (t <= 0.25) return kScale * (0.75 - 2.0 * t);
    if (t <= 0.75) return kScale * 0.25;
    return kScale * (1.0 - t);
}

double bench_marginal_cdf(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    if (t <= 0.125) return kScale * 2.0 * t * t;
    if (t <= 0.25) return kScale * (0.75 * t - t * t - 5.0 / 64.0) + 2.0 / 15.0;
    if (t <= 0.75) return kScale * 0.25 * (t - 0.25) + 1.0 / 3.0;
    return kScale * (t - 0.5 * t * t - 15.0 / 32.0) + 13.0 / 15.0;
}

double bench_marginal_quantile(double u) {
    if (u < 0.0 || u > 1.0) throw std::invalid_argument("quantile: u outside [0,1]");
    if (u <= 2.0 / 15.0) return std::sqrt(u / (kScale * 2.0));
    if (u <= 1.0 / 3.0) {
        // solve t^2 - (3/4)t + rhs = 0 on (1/8, 1/4], smaller root
        const double rhs = (u - 2.0 / 15.0) / kScale + 5.0 / 64.0;
        return 0.5 * (0.75 - std::sqrt(0.5625 - 4.0 * rhs));
    }
    if (u <= 13.0 / 15.0) return 0.25 + (u - 1.0 / 3.0) / (kScale * 0.25);
    // solve t - t^2/2 = rhs on (3/4, 1]
    const double rhs = (u - 13.0 / 15.0) / kScale + 15.0 / 32.0;
    const double disc = 1.0 - 2.0 * rhs;
    return 1.0 - std::sqrt(disc > 0.0 ? disc : 0.0);
}

namespace {

class Example1Product final : public Density {
public:
    explicit Example1Product(int d) : d_(d) {
        if (d < 1) throw std::invalid_argument("example1: d must be >= 1");
    }
    int dim() const override { return d_; }
    double eval(const std::vector<double>& x) const override {
        double f = 1.0;
        for (int i = 0; i < d_; ++i) f *= bench_marginal_eval(x[static_cast<std::size_t>(i)]);
        return f;
    }
    void draw(CounterRng& rng, double* out) const override {
        for (int i = 0; i < d_; ++i) out[i] = bench_marginal_quantile(rng.uniform());
    }

private:
    int d_;
};

class GaussianProduct final : public Density {
public:
    GaussianProduct(double sigma, int d) : sigma_(sigma), d_(d) {
        if (!(sigma > 0.0)) throw std::invalid_argument("gaussian: sigma must be positive");
        if (d < 1) throw std::invalid_argument("gaussian: d must be >= 1");
    }
    int dim() const override { return d_; }
    double eval(const std::vector<double>& x) const override {
        const double norm = 1.0 / (sigma_ * std::sqrt(2.0 * std::numbers::pi));
        double f = 1.0;
        for (int i = 0; i < d_; ++i) {
            const double z = x[static_cast<std::size_t>(i)] / sigma_;
            f *= norm * std::exp(-0.5 * z * z);
        }
        return f;
    }
    void draw(CounterRng& rng, double* out) const override {
        for (int i = 0; i < d_; ++i) out[i] = sigma_ * rng.normal();
    }

private:
    double sigma_;
    int d_;
};

class ProductOfMarginals final : public Density {
public:
    explicit ProductOfMarginals(std::vector<std::unique_ptr<Density>> marginals)
        : marginals_(std::move(marginals)) {
        if (marginals_.empty())
            throw std::invalid_argument("product density: no marginals");
        for (const auto& m : marginals_)
            if (m->dim() != 1)
                throw std::invalid_argument("product density: marginals must be 1-d");
    }
    int dim() const override { return static_cast<int>(marginals_.size()); }
    double eval(const std::vector<double>& x) const override {
        double f = 1.0;
        for (std::size_t i = 0; i < marginals_.size(); ++i)
            f *= marginals_[i]->eval({x[i]});
        return f;
    }
    void draw(CounterRng& rng, double* out) const override {
        for (std::size_t i = 0; i < marginals_.size(); ++i)
            marginals_[i]->draw(rng, out + i);
    }

private:
    std::vector<std::unique_ptr<Density>> marginals_;
};

} // namespace

std::unique_ptr<Density> make_example1(int d) {
    return std::make_unique<Example1Product>(d);
}

std::unique_ptr<Density> make_gaussian(double sigma, int d) {
    return std::make_unique<GaussianProduct>(sigma, d);
}

std::unique_ptr<Density> make_product(std::vector<std::unique_ptr<Density>> marginals) {
    return std::make_unique<ProductOfMarginals>(std::move(marginals));
}

SampleMatrix sample(const Density& model, std::int64_t n, std::uint64_t master_seed,
                    std::uint64_t stream) {
    if (n < 1) throw std::invalid_argument("sample: n must be >= 1");
    const int d = model.dim();
    SampleMatrix m(n, d);
    CounterRng rng(master_seed, stream);
    std::vector<double> row(static_cast<std::size_t>(d));
    for (std::int64_t r = 0; r < n; ++r) {
        model.draw(rng, row.data());
        for (int c = 0; c < d; ++c) m.at(r, c) = row[static_cast<std::size_t>(c)];
    }
    return m;
}

} // namespace adkde
