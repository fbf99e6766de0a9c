#pragma once

#include <complex>
#include <cstddef>

namespace stepwell::kernels {

// Fused node sums for the imaginary-order Bessel quadrature.  With
// c = cosh(t), computed internally from t:
//   f   = sum w * exp(-x c) * cos(s t)
//   fx  = sum w * c * exp(-x c) * cos(s t)
//   fs  = sum w * t * exp(-x c) * sin(s t)
//   fxs = sum w * t * c * exp(-x c) * sin(s t)
struct BesselSums {
    double f = 0.0;
    double fx = 0.0;
    double fs = 0.0;
    double fxs = 0.0;
};

// sum_i amp[i] * exp(i (base[i] + x * k[i])), the continuum phase accumulation.
// sum_i (re[i] + i im[i]) * exp(i phase[i]), rotation of precomputed complex amplitudes.

using bessel_sums_fn = BesselSums (*)(double x, double s, const double* t,
                                      const double* w, std::size_t n);
using phase_sum_fn = std::complex<double> (*)(const double* amp, const double* base,
                                              const double* k, double x, std::size_t n);
using rotate_sum_fn = std::complex<double> (*)(const double* re, const double* im,
                                               const double* phase, std::size_t n);

struct KernelTable {
    bessel_sums_fn bessel_sums;
    phase_sum_fn phase_sum;
    rotate_sum_fn rotate_sum;
};

enum class Isa { scalar, avx2 };

/// Table for the best ISA available at runtime (honors STEPWELL_ISA=scalar).
const KernelTable& active();
Isa active_isa();
/// Pin the dispatch for equivalence testing; throws if the ISA is unavailable.
void force_isa(Isa isa);

namespace scalar {
BesselSums bessel_sums(double x, double s, const double* t, const double* w, std::size_t n);
std::complex<double> phase_sum(const double* amp, const double* base, const double* k,
                               double x, std::size_t n);
std::complex<double> rotate_sum(const double* re, const double* im, const double* phase,
                                std::size_t n);
} // namespace scalar

#ifdef STEPWELL_HAVE_AVX2
namespace avx2 {
bool supported();
BesselSums bessel_sums(double x, double s, const double* t, const double* w, std::size_t n);
std::complex<double> phase_sum(const double* amp, const double* base, const double* k,
                               double x, std::size_t n);
std::complex<double> rotate_sum(const double* re, const double* im, const double* phase,
                                std::size_t n);
} // namespace avx2
#endif

} // namespace stepwell::kernels
