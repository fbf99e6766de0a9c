#include "stepwell/kernels.hpp"

#include <cmath>

namespace stepwell::kernels::scalar {

BesselSums bessel_sums(double x, double s, const double* t, const double* w,
                       std::size_t n) {
    BesselSums out;
    for (std::size_t i = 0; i < n; ++i) {
        const double ti = t[i];
        const double e = std::exp(ti);
        const double c = 0.5 * (e + 1.0 / e);
        const double env = w[i] * std::exp(-x * c);
        const double arg = s * ti;
        const double cs = std::cos(arg);
        const double sn = std::sin(arg);
        out.f += env * cs;
        out.fx += env * c * cs;
        out.fs += env * ti * sn;
        out.fxs += env * ti * c * sn;
    }
    return out;
}

std::complex<double> phase_sum(const double* amp, const double* base, const double* k,
                               double x, std::size_t n) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ph = base[i] + x * k[i];
        re += amp[i] * std::cos(ph);
        im += amp[i] * std::sin(ph);
    }
    return {re, im};
}

std::complex<double> rotate_sum(const double* re, const double* im, const double* phase,
                                std::size_t n) {
    double r = 0.0, i2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double c = std::cos(phase[i]);
        const double s = std::sin(phase[i]);
        r += re[i] * c - im[i] * s;
        i2 += re[i] * s + im[i] * c;
    }
    return {r, i2};
}

} // namespace stepwell::kernels::scalar
