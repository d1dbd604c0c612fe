#include "doctest.h"

#include "adkde/density.hpp"
#include "adkde/kernel.hpp"
#include "adkde/mc.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace adkde;

namespace {

ExperimentConfig small_example1() {
    ExperimentConfig cfg;
    cfg.density = "example1";
    cfg.d = 1;
    cfg.x0 = {0.5};
    cfg.q = 2;
    cfg.replications = 12;
    cfg.seed = 2468;
    cfg.l = 2;
    cfg.beta_max = 1.0;
    cfg.lambda_scale = 0.5;
    cfg.hbar = "dyadic:4";
    cfg.pbar = "all";
    return cfg;
}

ExperimentConfig small_gaussian_sweep() {
    ExperimentConfig cfg;
    cfg.density = "gaussian";
    cfg.sigma = 1.0;
    cfg.d = 1;
    cfg.x0 = {0.0};
    cfg.q = 2;
    cfg.n_values = {1024, 2048, 4096, 8192};
    cfg.replications = 30;
    cfg.seed = 97531;
    cfg.l = 2;
    cfg.beta_max = 2.0;
    cfg.lambda_scale = 0.5;
    cfg.hbar = "dyadic:6";
    cfg.pbar = "all";
    return cfg;
}

bool same_reps(const std::vector<RepMetrics>& a, const std::vector<RepMetrics>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t r = 0; r < a.size(); ++r) {
        if (a[r].estimate != b[r].estimate) return false;
        if (a[r].err_pow_q != b[r].err_pow_q) return false;
        if (a[r].h != b[r].h) return false;
        if (a[r].partition != b[r].partition) return false;
    }
    return true;
}

} // namespace

TEST_SUITE("harness") {

TEST_CASE("parallel_for fills every slot for any thread count") {
    for (int threads : {1, 3, 4, 8}) {
        std::vector<int> out(37, -1);
        parallel_for(threads, 37, [&](int i) { out[static_cast<std::size_t>(i)] = i * i; });
        for (int i = 0; i < 37; ++i)
            CHECK(out[static_cast<std::size_t>(i)] == i * i);
    }
    parallel_for(4, 0, [](int) { throw std::logic_error("never invoked"); });
    std::vector<int> two(2, 0);
    parallel_for(8, 2, [&](int i) { two[static_cast<std::size_t>(i)] = 1; });
    CHECK(two[0] + two[1] == 2);
}

TEST_CASE("parallel_for propagates the first worker exception") {
    const auto fn = [](int i) {
        if (i == 13) throw std::runtime_error("boom 13");
    };
    CHECK_THROWS_WITH(parallel_for(1, 100, fn), "boom 13");
    CHECK_THROWS_WITH(parallel_for(4, 100, fn), "boom 13");
}

TEST_CASE("mc_risk_point is deterministic and thread-count invariant") {
    const ExperimentConfig cfg = small_example1();
    std::vector<RepMetrics> r1, r2, r4;
    const RiskPoint p1 = mc_risk_point(cfg, 512, 1, &r1);
    const RiskPoint p2 = mc_risk_point(cfg, 512, 1, &r2);
    const RiskPoint p4 = mc_risk_point(cfg, 512, 4, &r4);

    CHECK(p1.risk == p2.risk);
    CHECK(p1.risk == p4.risk);
    CHECK(p1.std_error == p4.std_error);
    CHECK(same_reps(r1, r2));
    CHECK(same_reps(r1, r4));

    CHECK(p1.n == 512);
    CHECK(p1.replications == cfg.replications);
    CHECK(p1.risk > 0.0);
    CHECK(p1.mean_h.size() == 1);
    int freq_total = 0;
    for (const auto& [name, count] : p1.partition_freq) freq_total += count;
    CHECK(freq_total == cfg.replications);
}

TEST_CASE("different seeds give different draws and risks") {
    ExperimentConfig cfg = small_example1();
    const RiskPoint a = mc_risk_point(cfg, 512, 1);
    cfg.seed += 1;
    const RiskPoint b = mc_risk_point(cfg, 512, 1);
    CHECK(a.risk != b.risk);
}

TEST_CASE("quadrupling replications halves the standard error") {
    ExperimentConfig cfg = small_example1();
    cfg.replications = 60;
    const RiskPoint base = mc_risk_point(cfg, 512, 4);
    cfg.replications = 240;
    const RiskPoint quad = mc_risk_point(cfg, 512, 4);
    CHECK(base.std_error > 0.0);
    const double ratio = quad.std_error / base.std_error;
    CHECK(ratio > 0.35);
    CHECK(ratio < 0.65);
}

TEST_CASE("mc_risk fits a slope only when it has three points") {
    ExperimentConfig cfg = small_example1();
    cfg.replications = 6;
    cfg.n_values = {512, 1024};
    const RiskReport two = mc_risk(cfg, 2);
    CHECK(two.points.size() == 2);
    CHECK(two.points[0].n == 512);
    CHECK(two.points[1].n == 1024);
    CHECK(!two.slope.has_value());

    cfg.n_values = {512, 1024, 2048};
    const RiskReport three = mc_risk(cfg, 2);
    CHECK(three.points.size() == 3);
    REQUIRE(three.slope.has_value());
    CHECK(std::isfinite(three.slope->slope));
    CHECK(three.slope->ci_lo < three.slope->ci_hi);
}

TEST_CASE("rate_sweep recovers a negative log-log slope at desk scale") {
    const ExperimentConfig cfg = small_gaussian_sweep();
    const RiskReport report = rate_sweep(cfg, 4);
    REQUIRE(report.points.size() == 4);
    for (const RiskPoint& p : report.points)
        CHECK(p.risk > 0.0);
    REQUIRE(report.slope.has_value());
    CHECK(report.slope->slope < -0.05);
    CHECK(report.slope->slope > -1.0);
    CHECK(report.slope->std_error > 0.0);
}

TEST_CASE("rate_sweep rejects malformed n schedules") {
    ExperimentConfig cfg = small_gaussian_sweep();
    cfg.n_values = {1024, 2048, 4096};
    CHECK_THROWS_AS(rate_sweep(cfg, 1), std::invalid_argument);
    cfg.n_values = {1024, 512, 2048, 4096};
    CHECK_THROWS_AS(rate_sweep(cfg, 1), std::invalid_argument);
    cfg.n_values = {1024, 1024, 2048, 4096};
    CHECK_THROWS_AS(rate_sweep(cfg, 1), std::invalid_argument);
}

TEST_CASE("bias functional vanishes when the coarse scale dominates") {
    const HigherOrderKernel K{make_default_base(2)};
    const auto model = make_gaussian(1.0, 1);
    // h <= eta means h-vee-eta == eta, so the integrand is identically zero.
    const BiasReport rep = bias_bound_check(*model, K, 0.0, {0.25, 0.125, 0.0625}, 0.25);
    for (double b : rep.bias)
        CHECK(b == 0.0);
}

TEST_CASE("bias decays at the kernel order on a smooth model") {
    const HigherOrderKernel K{make_default_base(2)};
    const auto model = make_gaussian(1.0, 1);
    std::vector<double> hs;
    for (int k = 3; k <= 8; ++k) hs.push_back(std::pow(2.0, -k));
    const BiasReport rep = bias_bound_check(*model, K, 0.0, hs, 0.0);
    for (double b : rep.bias)
        CHECK(std::fabs(b) > 0.0);
    CHECK(rep.decay_exponent == doctest::Approx(2.0).epsilon(0.075));
}

TEST_CASE("bias_bound_check input validation") {
    const HigherOrderKernel K{make_default_base(2)};
    const auto flat = make_gaussian(1.0, 2);
    CHECK_THROWS_AS(bias_bound_check(*flat, K, 0.0, {0.5, 0.25}, 0.0), std::invalid_argument);
    const auto line = make_gaussian(1.0, 1);
    CHECK_THROWS_AS(bias_bound_check(*line, K, 0.0, {0.5}, 0.0), std::invalid_argument);
}

} // TEST_SUITE
