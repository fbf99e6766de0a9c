#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "stepwell/airy.hpp"
#include "stepwell/wavepacket.hpp"

using namespace stepwell::wavepacket;
using stepwell::stepexp::StepExpParams;
using stepwell::steplinear::StepLinearParams;

namespace {

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1.0);
    return v;
}

} // namespace

TEST_CASE("spec builder enforces the packet invariants") {
    CHECK_THROWS_AS(WavePacketSpec::make(1.0, 0.2, 30.0), std::invalid_argument);
    auto spec = WavePacketSpec::make(2.0, 2.0 / 12.0, 40.0);
    CHECK(spec.k_min > 0.0);
    CHECK(spec.amplitude(spec.k_min) < 1e-12 * spec.amplitude(spec.k_peak));
    CHECK(spec.amplitude(spec.k_max) < 1e-12 * spec.amplitude(spec.k_peak));
    const double dk = (spec.k_max - spec.k_min) / (spec.n_k - 1);
    CHECK(dk <= spec.sigma_k / 32.0);
    // |c|^2 integrates to one (trapezoid)
    double acc = 0.0;
    for (int i = 0; i < spec.n_k; ++i) {
        const double k = spec.k_min + i * dk;
        const double a = spec.amplitude(k);
        acc += a * a * ((i == 0 || i == spec.n_k - 1) ? 0.5 : 1.0) * dk;
    }
    CHECK(acc == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("hard wall: pre-bounce leftward motion, post-bounce rightward, zero delay") {
    HardWall wall;
    const double k_peak = 2.0;
    auto spec = WavePacketSpec::make(k_peak, k_peak / 12.0, 40.0);
    const double v = k_peak; // hbar k/m with hbar = m = 1
    const double t0 = spec.x_start / v;

    // early times: a single leftward Gaussian
    auto x_grid = linspace(0.5, 90.0, 1500);
    auto field = evolve(wall, spec, x_grid, {0.0, 0.2 * t0, 1.9 * t0, 2.1 * t0});
    auto centroid = [&](std::size_t it) {
        double mass = 0.0, moment = 0.0;
        for (std::size_t j = 0; j + 1 < x_grid.size(); ++j) {
            const double seg = 0.5 * (std::norm(field.at(it, j)) +
                                      std::norm(field.at(it, j + 1))) *
                               (x_grid[j + 1] - x_grid[j]);
            mass += seg;
            moment += seg * 0.5 * (x_grid[j] + x_grid[j + 1]);
        }
        return moment / mass;
    };
    const double c0 = centroid(0), c1 = centroid(1);
    CHECK(c1 < c0); // moving left before the bounce
    CHECK((c1 - c0) / (0.2 * t0) == doctest::Approx(-v).epsilon(0.03));
    const double c2 = centroid(2), c3 = centroid(3);
    CHECK(c3 > c2); // moving right after

    // measured delay consistent with instantaneous reflection
    auto trace = run_reflection(wall, spec);
    CHECK(trace.tau_predicted == 0.0);
    CHECK(std::abs(trace.tau_measured) < 0.08 * (2.0 * t0)); // small vs the flight time
    CHECK(trace.fit_slope == doctest::Approx(v).epsilon(0.02));
}

TEST_CASE("norm is conserved through the bounce (linear potential)") {
    auto params = StepLinearParams::from_beta0(4.5);
    const double beta_peak = 8.0;
    const double k_peak = params.alpha * std::sqrt(beta_peak - params.beta0);
    auto spec = WavePacketSpec::make(k_peak, k_peak / 12.0, 30.0);
    const double v = k_peak; // m = hbar = 1
    const double t0 = spec.x_start / v;

    auto x_grid = linspace(-14.0, 75.0, 1600);
    auto t_grid = linspace(0.0, 2.2 * t0, 7);
    auto field = evolve(params, spec, x_grid, t_grid);
    const double n0 = field.norm_at(0);
    CHECK(n0 == doctest::Approx(1.0).epsilon(0.01));
    for (std::size_t it = 1; it < t_grid.size(); ++it)
        CHECK(field.norm_at(it) == doctest::Approx(n0).epsilon(0.01));
}

TEST_CASE("reflected packet delay matches the analytic prediction (linear)") {
    auto params = StepLinearParams::from_beta0(4.5);
    const double beta_peak = 8.0;
    const double k_peak = params.alpha * std::sqrt(beta_peak - params.beta0);
    auto spec = WavePacketSpec::make(k_peak, k_peak / 14.0, 45.0);
    auto trace = run_reflection(params, spec);
    CHECK(trace.fit_slope ==
          doctest::Approx(trace.group_velocity_expected).epsilon(0.02));
    CHECK(trace.tau_measured == doctest::Approx(trace.tau_predicted).epsilon(0.10));
}

TEST_CASE("reflected packet delay matches the analytic prediction (exponential)") {
    auto params = StepExpParams::from_dimensionless(12.0, 1.0);
    const double beta_peak = 20.0;
    const double k_peak = std::sqrt(beta_peak - params.beta0) / (2.0 * params.sigma);
    auto spec = WavePacketSpec::make(k_peak, k_peak / 14.0, 45.0 * params.sigma * 2.0);
    auto trace = run_reflection(params, spec);
    CHECK(trace.fit_slope ==
          doctest::Approx(trace.group_velocity_expected).epsilon(0.02));
    CHECK(trace.tau_measured == doctest::Approx(trace.tau_predicted).epsilon(0.10));
}

TEST_CASE("delay measurement sharpens as sigma_k shrinks") {
    auto params = StepLinearParams::from_beta0(4.5);
    const double beta_peak = 8.0;
    const double k_peak = params.alpha * std::sqrt(beta_peak - params.beta0);
    auto wide = run_reflection(params, WavePacketSpec::make(k_peak, k_peak / 11.0, 45.0));
    auto narrow = run_reflection(params, WavePacketSpec::make(k_peak, k_peak / 22.0, 90.0));
    const double err_wide = std::abs(wide.tau_measured - wide.tau_predicted);
    const double err_narrow = std::abs(narrow.tau_measured - narrow.tau_predicted);
    CHECK(err_narrow < err_wide + 0.05 * std::abs(wide.tau_predicted));
}

TEST_CASE("measured delay peaks when the packet crosses a resonance") {
    auto params = StepLinearParams::from_beta0(4.5);
    const double eta3 = stepwell::specfun::airy_zero(
        3, stepwell::specfun::AiryZeroKind::AiPrime); // 4.8201 > beta0
    auto tau_at = [&](double beta_peak) {
        const double k_peak = params.alpha * std::sqrt(beta_peak - params.beta0);
        auto spec = WavePacketSpec::make(k_peak, k_peak / 24.0, 110.0);
        return run_reflection(params, spec).tau_measured;
    };
    const double at_res = tau_at(eta3);
    const double below = tau_at(eta3 - 0.18);
    const double above = tau_at(eta3 + 0.18);
    CHECK(at_res > below);
    CHECK(at_res > above);
}

TEST_CASE("grid guards reject unresolved packets") {
    HardWall wall;
    auto spec = WavePacketSpec::make(2.0, 2.0 / 12.0, 40.0);
    auto coarse_x = linspace(0.5, 50.0, 40); // dx far above 1/(8 k_max)
    CHECK_THROWS_AS(evolve(wall, spec, coarse_x, {0.0}), std::invalid_argument);
    auto bad_spec = spec;
    bad_spec.n_k = 40; // under 32 points per sigma
    auto fine_x = linspace(0.5, 50.0, 2000);
    CHECK_THROWS_AS(evolve(wall, bad_spec, fine_x, {0.0}), std::invalid_argument);
}
