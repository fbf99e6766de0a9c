#include "stepwell/numerov.hpp"

#include <cmath>
#include <stdexcept>

namespace stepwell::validate {

namespace {

struct ShootResult {
    int nodes = 0;
    double boundary = 0.0; // sign-carrying, renormalized
};

// Numerov march of u'' = f u from the left with u(x_left) = 0; periodic
// renormalization keeps the exponentially growing solution representable.
ShootResult shoot(const NumerovProblem& p, double E) {
    const int n = p.n_points;
    const double h = (p.x_right - p.x_left) / (n - 1);
    const double h2_12 = h * h / 12.0;

    auto f_at = [&](int i) { return p.potential(p.x_left + i * h) - E; };

    double f_prev = f_at(0), f_curr = f_at(1);
    double u_prev = 0.0;
    double u_curr = h; // arbitrary scale
    ShootResult out;
    for (int i = 1; i < n - 1; ++i) {
        const double f_next = f_at(i + 1);
        const double u_next = ((2.0 + 10.0 * h2_12 * f_curr) * u_curr -
                               (1.0 - h2_12 * f_prev) * u_prev) /
                              (1.0 - h2_12 * f_next);
        if ((u_next < 0.0 && u_curr > 0.0) || (u_next > 0.0 && u_curr < 0.0)) ++out.nodes;
        u_prev = u_curr;
        u_curr = u_next;
        f_prev = f_curr;
        f_curr = f_next;
        const double mag = std::abs(u_curr);
        if (mag > 1e250) {
            u_prev /= mag;
            u_curr /= mag;
        }
    }
    out.boundary = u_curr;
    return out;
}

} // namespace

int numerov_node_count(const NumerovProblem& problem, double E) {
    return shoot(problem, E).nodes;
}

std::vector<double> numerov_eigenvalues(const NumerovProblem& problem, int n_levels) {
    if (problem.n_points < 16) throw std::invalid_argument("numerov: n_points too small");
    if (!(problem.e_hi > problem.e_lo))
        throw std::invalid_argument("numerov: energy bracket empty");

    std::vector<double> levels;
    levels.reserve(n_levels);
    for (int level = 0; level < n_levels; ++level) {
        // count(E) <= level below the eigenvalue, >= level+1 above it
        double lo = levels.empty() ? problem.e_lo : levels.back();
        double hi = problem.e_hi;
        if (shoot(problem, hi).nodes < level + 1)
            throw std::runtime_error("numerov_eigenvalues: bracket exhausted at level " +
                                     std::to_string(level));
        for (int i = 0; i < 200 && (hi - lo) > 1e-13 * std::max(1.0, std::abs(hi)); ++i) {
            const double mid = 0.5 * (lo + hi);
            (shoot(problem, mid).nodes <= level ? lo : hi) = mid;
        }
        levels.push_back(0.5 * (lo + hi));
    }
    return levels;
}

FdResult fd_derivative(const std::function<double(double)>& f, double x, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("fd_derivative: h > 0");
    auto d5 = [&](double hh) {
        const double f1 = f(x + hh), f2 = f(x - hh);
        const double f3 = f(x + 2.0 * hh), f4 = f(x - 2.0 * hh);
        if (!std::isfinite(f1) || !std::isfinite(f2) || !std::isfinite(f3) ||
            !std::isfinite(f4))
            throw std::runtime_error("fd_derivative: non-finite sample");
        return (8.0 * (f1 - f2) - (f3 - f4)) / (12.0 * hh);
    };
    const double coarse = d5(h);
    const double fine = d5(0.5 * h);
    FdResult out;
    out.value = (16.0 * fine - coarse) / 15.0;
    out.err = std::abs(fine - coarse) / 15.0 + 1e-16 * std::abs(out.value);
    return out;
}

} // namespace stepwell::validate
