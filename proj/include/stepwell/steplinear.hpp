#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace stepwell::steplinear {

/// Parameters of the potential -M x (x <= 0) / U0 (x > 0).  beta0 is stored
/// explicitly and is authoritative for all dimensionless work, so physical
/// and dimensionless construction routes that agree on beta0 produce
/// bit-identical sweeps.
struct StepLinearParams {
    double M;
    double U0;
    double m;
    double hbar;
    double alpha; // (2 m M / hbar^2)^{1/3}
    double beta0; // alpha U0 / M

    static StepLinearParams from_physical(double M, double U0, double m, double hbar);
    /// hbar = m = 1 and M = 1/2 so that alpha = 1 and beta = E / M rescales trivially.
    static StepLinearParams from_beta0(double beta0);

    double beta_of_energy(double E) const { return alpha * E / M; }
    double energy_of_beta(double beta) const { return M * beta / alpha; }
    /// Physical delay per unit of dimensionless d(delta)/d(beta).
    double tau_unit() const { return hbar * alpha / M; }
};

struct BoundState {
    int n = 0;          // 1-based ordinal
    double beta = 0.0;  // dimensionless energy in (0, beta0)
    double energy = 0.0;
    double C = 0.0;     // left amplitude after normalization
    double F = 0.0;     // right amplitude after normalization
    double norm = 0.0;  // L2 norm of the C=1 raw eigenfunction
};

struct ScatteringState {
    double k = 0.0;    // physical wavenumber, hbar k = sqrt(2m(E-U0))
    double beta = 0.0; // > beta0
    double delta = 0.0;
    std::complex<double> Pi;
};

struct DelaySample {
    double beta = 0.0;
    double tau = 0.0;           // units hbar alpha / M
    double tau_classical = 0.0; // 2 sqrt(beta)
};

struct Resonance {
    double beta_center = 0.0;
    double eta_n = 0.0; // nearest zero of Ai'(-.)
    double height = 0.0;
    double width = 0.0; // FWHM of the excess over the classical baseline
};

/// All bound states on (0, beta0), ordered by beta (at most max_states).
std::vector<BoundState> bound_states(const StepLinearParams& params,
                                     std::size_t max_states = 100000);

/// (8/(3n))^{1/3} pi^{2/3}, the large-n level spacing.
double level_spacing_asymptotic(int n);

/// Continuous-branch phase shift at beta > beta0; the branch is pinned to
/// the semiclassical phase 2 zeta - pi/2 at large beta.
double phase_shift(const StepLinearParams& params, double beta);

/// Wigner delay from the cleared-denominator form of d(delta)/d(beta).
DelaySample delay(const StepLinearParams& params, double beta);

/// tau(beta) peaks over the classical baseline on (beta0, beta_max].
std::vector<Resonance> resonances(const StepLinearParams& params, double beta_max);

ScatteringState scattering_state(const StepLinearParams& params, double beta);

std::complex<double> eigenfunction(const StepLinearParams& params, const BoundState& state,
                                   double x);
std::complex<double> eigenfunction(const StepLinearParams& params,
                                   const ScatteringState& state, double x);

} // namespace stepwell::steplinear
