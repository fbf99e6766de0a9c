#include "stepwell/gauss.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace stepwell {

namespace {

// Newton iteration on the Legendre recurrence, the usual gauleg construction.
GaussRule build_rule(int n) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weights[n - 1 - i] = rule.weights[i];
    }
    return rule;
}

} // namespace

const GaussRule& gauss_legendre(int order) {
    if (order < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
    static std::map<int, GaussRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, build_rule(order)).first;
    return it->second;
}

double integrate_panels(const std::function<double(double)>& f, double a, double b,
                        int n_panels, int order) {
    const GaussRule& rule = gauss_legendre(order);
    const double h = (b - a) / n_panels;
    double total = 0.0, comp = 0.0;
    for (int p = 0; p < n_panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        double acc = 0.0;
        for (int i = 0; i < order; ++i)
            acc += rule.weights[i] * f(mid + 0.5 * h * rule.nodes[i]);
        // Kahan across panels
        double y = 0.5 * h * acc - comp;
        double t = total + y;
        comp = (t - total) - y;
        total = t;
    }
    return total;
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, double abs_tol, int order,
                          int initial_panels, int max_panels) {
    double coarse = integrate_panels(f, a, b, initial_panels, order);
    for (int n = 2 * initial_panels; n <= max_panels; n *= 2) {
        double fine = integrate_panels(f, a, b, n, order);
        double diff = std::abs(fine - coarse);
        if (diff <= rel_tol * std::abs(fine) + abs_tol) return fine;
        coarse = fine;
    }
    throw std::runtime_error("integrate_adaptive: no convergence");
}

} // namespace stepwell
