#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace stepwell {

/// Gauss-Legendre nodes and weights on [-1, 1], computed once per order and cached.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussRule& gauss_legendre(int order);

/// Composite fixed-panel Gauss-Legendre integral of f over [a, b].
double integrate_panels(const std::function<double(double)>& f, double a, double b,
                        int n_panels, int order = 16);

/// Panel-doubling integration: refines until successive estimates agree to
/// rel_tol (or abs_tol) and returns the finer estimate.  Throws on
/// non-convergence past max_panels.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, double abs_tol = 0.0, int order = 16,
                          int initial_panels = 8, int max_panels = 1 << 16);

} // namespace stepwell
