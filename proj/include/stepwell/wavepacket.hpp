#pragma once

#include <complex>
#include <variant>
#include <vector>

#include "stepwell/stepexp.hpp"
#include "stepwell/steplinear.hpp"

namespace stepwell::wavepacket {

/// Gaussian continuum packet: |c(k)| = (2 pi sigma_k^2)^{-1/4}
/// exp(-(k-k_peak)^2/(4 sigma_k^2)), gamma(k) = k x_start, so the packet
/// starts centered at x_start > 0 moving left and t0 = x_start m/(hbar k_peak).
struct WavePacketSpec {
    double k_peak = 0.0;
    double sigma_k = 0.0;
    double x_start = 0.0;
    double k_min = 0.0;
    double k_max = 0.0;
    int n_k = 0;

    /// Builds the grid: span 10.6 sigma each side (|c| < 1e-12 of peak at the
    /// ends), at least 33 points per sigma.  Enforces sigma_k <= k_peak/10
    /// and k_min > 0.
    static WavePacketSpec make(double k_peak, double sigma_k, double x_start,
                               int n_k = 0);

    double amplitude(double k) const;
    double gamma(double k) const { return k * x_start; }
};

/// Instantaneous-reflection reference (delta == pi), the zero-delay baseline.
struct HardWall {
    double U0 = 0.0;
    double m = 1.0;
    double hbar = 1.0;
};

using Potential = std::variant<steplinear::StepLinearParams, stepexp::StepExpParams, HardWall>;

struct PacketField {
    std::vector<double> x;
    std::vector<double> t;
    std::vector<std::complex<double>> psi; // row-major [t][x]

    const std::complex<double>& at(std::size_t it, std::size_t ix) const {
        return psi[it * x.size() + ix];
    }
    /// Trapezoid integral of |psi|^2 over the x grid at time index it.
    double norm_at(std::size_t it) const;
};

struct PacketTrace {
    std::vector<double> times;
    std::vector<double> centroid;
    double tau_measured = 0.0;
    double tau_predicted = 0.0;
    double t0 = 0.0;
    double k_peak = 0.0;
    double group_velocity_expected = 0.0;
    double fit_slope = 0.0;
    double fit_intercept = 0.0;
    double fit_residual = 0.0; // rms, relative to the centroid range
    bool fitted = false;
};

/// psi(x, t) by k-quadrature over the improper eigenfunctions.  Rejects
/// grids that do not resolve the packet (dx < 1/(8 k_max), >= 32 points per
/// sigma_k).
PacketField evolve(const Potential& potential, const WavePacketSpec& spec,
                   const std::vector<double>& x_grid, const std::vector<double>& t_grid);

/// Late-time linear fit x = v (t - t0 - tau); returns tau and stores the fit
/// in the trace.  Throws if the residual exceeds max_rel_residual.
double measure_delay(PacketTrace& trace, double max_rel_residual = 0.05);

/// Full protocol: evolve over the outgoing window x > x_cut, track the
/// centroid, fit, and attach the analytic prediction at beta(k_peak).
PacketTrace run_reflection(const Potential& potential, const WavePacketSpec& spec);

} // namespace stepwell::wavepacket
