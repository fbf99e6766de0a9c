#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "stepwell/numerov.hpp"
#include "stepwell/symwells.hpp"

using namespace stepwell::validate;
using stepwell::symwells::ExpWell;
using stepwell::symwells::LinearWell;

TEST_CASE("infinite square well sanity: n^2 pi^2 / L^2 pattern") {
    NumerovProblem prob;
    prob.potential = [](double) { return 0.0; };
    prob.x_left = 0.0;
    prob.x_right = 1.0;
    prob.n_points = 6000;
    prob.e_lo = 0.1;
    prob.e_hi = 400.0;
    auto levels = numerov_eigenvalues(prob, 5);
    for (int n = 1; n <= 5; ++n) {
        const double exact = n * n * std::numbers::pi * std::numbers::pi;
        CHECK(levels[n - 1] == doctest::Approx(exact).epsilon(1e-6));
    }
}

TEST_CASE("fourth-order convergence on the square well") {
    auto err_at = [](int n_points) {
        NumerovProblem prob;
        prob.potential = [](double) { return 0.0; };
        prob.x_left = 0.0;
        prob.x_right = 1.0;
        prob.n_points = n_points;
        prob.e_lo = 50.0;
        prob.e_hi = 500.0;
        auto levels = numerov_eigenvalues(prob, 3);
        const double exact = 9.0 * std::numbers::pi * std::numbers::pi;
        return std::abs(levels[2] - exact);
    };
    const double e1 = err_at(500);
    const double e2 = err_at(2000);
    CHECK(e1 / e2 > 8.0); // ~16x for a 4th-order method, allow slack
}

TEST_CASE("linear well: first odd level is the first Airy zero") {
    NumerovProblem prob;
    prob.potential = [](double y) { return std::abs(y); };
    prob.x_left = -30.0;
    prob.x_right = 30.0;
    prob.n_points = 40000;
    prob.e_lo = 0.2;
    prob.e_hi = 9.0;
    auto levels = numerov_eigenvalues(prob, 4);
    CHECK(levels[1] == doctest::Approx(2.33811).epsilon(1e-5)); // odd ground
    CHECK(levels[0] == doctest::Approx(1.01879).epsilon(1e-4)); // even ground
}

TEST_CASE("exp well eigenvalues match the analytic K-zero conditions") {
    const auto well = ExpWell::from_alpha(1.0);
    auto analytic = stepwell::symwells::exp_well_levels(well, 5);
    NumerovProblem prob;
    const double beta_top = analytic.back().beta;
    prob.potential = [](double xi) { return std::exp(2.0 * std::abs(xi)); };
    prob.x_left = -(0.5 * std::log(beta_top) + 4.5);
    prob.x_right = 0.5 * std::log(beta_top) + 4.5;
    prob.n_points = 48000;
    prob.e_lo = 1.0 + 1e-6;
    prob.e_hi = beta_top + 1.0;
    auto numerov = numerov_eigenvalues(prob, 5);
    for (int i = 0; i < 5; ++i)
        CHECK(numerov[i] == doctest::Approx(analytic[i].beta).epsilon(1e-6));
}

TEST_CASE("node counting is monotone and brackets report exhaustion") {
    NumerovProblem prob;
    prob.potential = [](double y) { return std::abs(y); };
    prob.x_left = -20.0;
    prob.x_right = 20.0;
    prob.n_points = 8000;
    prob.e_lo = 0.2;
    prob.e_hi = 2.0;
    CHECK(numerov_node_count(prob, 0.5) <= numerov_node_count(prob, 1.9));
    CHECK_THROWS_AS(numerov_eigenvalues(prob, 6), std::runtime_error);
}

TEST_CASE("fd_derivative: polynomial exactness and error reporting") {
    auto fd = fd_derivative([](double x) { return x * x; }, 3.0, 1e-3);
    CHECK(fd.value == doctest::Approx(6.0).epsilon(1e-10));
    CHECK(fd.err < 1e-8);
    auto fd2 = fd_derivative([](double x) { return std::sin(x); }, 1.0, 1e-2);
    CHECK(fd2.value == doctest::Approx(std::cos(1.0)).epsilon(1e-10));
    CHECK_THROWS_AS(
        fd_derivative([](double) { return std::nan(""); }, 0.0, 1e-3),
        std::runtime_error);
}
