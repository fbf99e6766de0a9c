#pragma once

#include <complex>
#include <vector>

namespace stepwell::specfun {

enum class ContourLabel { Gamma1, Gamma2, Gamma3, BesselSemiInfinite, BesselFinite };

/// A piecewise-linear integration path in the complex t-plane.  The Airy
/// paths run between decay sectors through the origin; the Bessel paths are
/// the fundamental real-axis and [0, i pi] legs.
struct ContourPath {
    ContourLabel label;
    std::vector<std::complex<double>> waypoints;
    double truncation_radius;

    /// Airy paths Gamma1/Gamma2/Gamma3.  beta_plus_y enters the truncation
    /// radius (the exponent's linear term fights the cubic decay).
    static ContourPath airy_path(ContourLabel label, double beta_plus_y);
    /// Bessel paths; truncation applies to the semi-infinite real leg only.
    static ContourPath bessel_path(ContourLabel label, double z);
};

/// Quadrature of exp(t^3/3 + (beta+y) t) along an Airy path with n_quad
/// nodes in total; (E(G1)+E(G2))/(2 pi i) = Ai(-y-beta).
std::complex<double> airy_contour(double y, double beta, const ContourPath& path, int n_quad);

/// Convergence-checked wrapper: doubles n_quad until two estimates agree to
/// tol (relative to the larger modulus); throws std::runtime_error otherwise.
std::complex<double> airy_contour_converged(double y, double beta, ContourLabel label,
                                            double tol = 1e-10);

/// Quadrature of sinh(t)^{2 nu} e^{-z cosh t} z^nu along a Bessel path.
/// With the semi-infinite path and the K normalization prefactor this is
/// K_nu(z); with the finite path and the I prefactor it is I_nu(z).
std::complex<double> bessel_contour(std::complex<double> nu, double z,
                                    const ContourPath& path, int n_quad);

/// K_nu(z) via the Appendix-style normalized semi-infinite path integral.
std::complex<double> bessel_k_contour(std::complex<double> nu, double z, int n_quad);
/// I_nu(z) via the normalized finite-path integral.
std::complex<double> bessel_i_contour(std::complex<double> nu, double z, int n_quad);

} // namespace stepwell::specfun
