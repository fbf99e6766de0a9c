#include "stepwell/lambert.hpp"

#include <cmath>
#include <stdexcept>

namespace stepwell::specfun {

double lambert_w(double x) {
    if (!(x >= 0.0)) throw std::domain_error("lambert_w: requires x >= 0");
    if (x == 0.0) return 0.0;

    double w = std::log1p(x);
    for (int i = 0; i < 60; ++i) {
        const double ew = std::exp(w);
        const double f = w * ew - x;
        // Halley: f' = e^w (1+w), f'' = e^w (2+w)
        const double denom = ew * (w + 1.0) - f * (w + 2.0) / (2.0 * (w + 1.0));
        const double step = f / denom;
        w -= step;
        if (std::abs(step) <= 1e-14 * std::max(std::abs(w), 1.0)) break;
    }
    return w;
}

} // namespace stepwell::specfun
