#pragma once

namespace stepwell::specfun {

struct KStatus {
    bool underflow = false; // whole integrand below absolute significance
};

/// K_{is}(x), the real-valued modified Bessel function of imaginary order,
/// as the cosine transform  int_0^inf e^{-x cosh t} cos(s t) dt.
///
/// Gauss-Legendre panels on [0, T] with T set 40 decades below the
/// integrand peak; panel width tied to the 2 pi / s oscillation period for
/// large s.  Relative accuracy is ~1e-12 for s <~ 10 and degrades like
/// eps * e^{pi s / 2 - x} beyond (the representation cancels to the
/// e^{-pi s/2} envelope), which still locates zeros to ~1e-3 of a period at
/// s ~ 22.  Throws std::domain_error for non-finite or out-of-range input.
double bessel_k_imag(double s, double x, KStatus* status = nullptr);

/// d/dx K_{is}(x) = -int_0^inf cosh t e^{-x cosh t} cos(s t) dt.
double bessel_k_imag_dx(double s, double x, KStatus* status = nullptr);

/// d/dbeta K_{i sqrt(beta)}(x), via the order-derivative under the integral
/// sign; finite as beta -> 0+.
double bessel_k_imag_dbeta(double beta, double x, KStatus* status = nullptr);

/// All four quadrature-coupled values in one integrand pass:
/// value, d/dx, d/dbeta, and d/dbeta of d/dx.
struct KBundle {
    double k = 0.0;
    double k_dx = 0.0;
    double k_dbeta = 0.0;
    double k_dx_dbeta = 0.0;
    bool underflow = false;
};
KBundle bessel_k_imag_bundle(double beta, double x);

/// Leading asymptotic of K_{i sqrt(beta)}(alpha) for beta >= 25:
/// sqrt(2 pi / sqrt(beta)) e^{-pi sqrt(beta)/2} sin(phase),
/// phase = alpha^2/(4 sqrt(beta)) - sqrt(beta) + sqrt(beta) log(2 sqrt(beta)/alpha) + pi/4.
double bessel_k_imag_asymptotic(double beta, double alpha);

/// n-th zero in beta of K_{i sqrt(beta)}(alpha) (kind K) or of its argument
/// derivative (kind KPrime), n >= 1.
enum class KZeroKind { K, KPrime };
double bessel_k_zero(int n, double alpha, KZeroKind kind = KZeroKind::K);

/// Count of K-zeros (in beta) at or below beta for this alpha.
int bessel_k_zero_count(double beta, double alpha);

} // namespace stepwell::specfun
