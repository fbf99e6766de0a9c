#pragma once

#include <functional>
#include <vector>

namespace stepwell::validate {

/// Shooting eigenproblem u'' = (V(x) - E) u in units hbar^2/(2m) = 1, with
/// both domain ends classically forbidden at the energies of interest.
struct NumerovProblem {
    std::function<double(double)> potential;
    double x_left = 0.0;
    double x_right = 0.0;
    int n_points = 2000;
    double e_lo = 0.0;
    double e_hi = 0.0;
};

/// First n_levels eigenvalues inside [e_lo, e_hi], by node counting plus
/// bisection on the boundary-value sign of the left-shot solution.  Throws
/// std::runtime_error on bracket exhaustion.
std::vector<double> numerov_eigenvalues(const NumerovProblem& problem, int n_levels);

/// Nodes of the left-shot solution at energy E (diagnostic; monotone in E).
int numerov_node_count(const NumerovProblem& problem, double E);

struct FdResult {
    double value = 0.0;
    double err = 0.0;
};

/// Richardson-extrapolated 5-point central derivative with an error
/// estimate; throws std::runtime_error if the samples are not finite.
FdResult fd_derivative(const std::function<double(double)>& f, double x, double h);

} // namespace stepwell::validate
