#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace stepwell::stepexp {

/// Parameters of the potential kappa(e^{-x/sigma} - 1) (x <= 0) / U0 (x > 0).
/// beta0 and alpha are stored explicitly and are authoritative for the
/// dimensionless work.
struct StepExpParams {
    double kappa;
    double sigma;
    double U0;
    double m;
    double hbar;
    double alpha; // sqrt(8 m kappa sigma^2 / hbar^2)
    double beta0; // 8 m (U0 + kappa) sigma^2 / hbar^2

    static StepExpParams from_physical(double kappa, double sigma, double U0, double m,
                                       double hbar);
    /// hbar = m = 1, sigma = 1/(2 sqrt(2)) so 8 m sigma^2/hbar^2 = 1; then
    /// kappa = alpha^2 and U0 = beta0 - alpha^2 (requires beta0 > alpha^2).
    static StepExpParams from_dimensionless(double beta0, double alpha);

    double beta_of_energy(double E) const {
        return 8.0 * m * (E + kappa) * sigma * sigma / (hbar * hbar);
    }
    double energy_of_beta(double beta) const {
        return beta * hbar * hbar / (8.0 * m * sigma * sigma) - kappa;
    }
    /// Physical delay per unit of dimensionless d(delta)/d(beta).
    double tau_unit() const { return 8.0 * m * sigma * sigma / hbar; }
};

struct BoundStateExp {
    int n = 0;
    double beta = 0.0; // in (alpha^2, beta0)
    double energy = 0.0;
    double C = 0.0;
    double F = 0.0;
    double norm = 0.0;
};

struct ScatteringStateExp {
    double k = 0.0; // physical, hbar k = sqrt(2m(E-U0)); 2 sigma k = sqrt(beta-beta0)
    double beta = 0.0;
    double delta = 0.0;
    std::complex<double> Pi;
};

struct DelaySampleExp {
    double beta = 0.0;
    double tau = 0.0;           // units 8 m sigma^2 / hbar
    double tau_classical = 0.0; // log(2 sqrt(beta)/alpha)/sqrt(beta)
};

std::vector<BoundStateExp> bound_states(const StepExpParams& params,
                                        std::size_t max_states = 100000);

/// Asymptotic n-th zero in beta of K_{i sqrt(beta)}(alpha), solving the
/// envelope sine phase = n pi exactly through Lambert W (the pi/4 phase
/// offset of the sine is retained, which the large-n zeros need to land
/// within 1%).
double well_zero_asymptotic(int n, double alpha);
/// Cruder log-form of the same zeros, n^2 pi^2 / log^2(2 n pi/(alpha e)).
double well_zero_asymptotic_log(int n, double alpha);

double phase_shift(const StepExpParams& params, double beta);

DelaySampleExp delay(const StepExpParams& params, double beta);

/// Asymptotic ratio K'/K and d/dbeta log(K'/K) for beta >= 25; test targets
/// only (the delay itself uses exact order-derivatives).
struct DelayAsymptotic {
    double ratio;    // -(sqrt(beta)/alpha) cot(phase)
    double dlog;     // 1/(2 beta) - log(2 sqrt(beta)/alpha)/(sqrt(beta) sin(2 phase))
    bool near_pole;  // cot/csc blow-up nearby; values unreliable
};
DelayAsymptotic delay_asymptotic_ratio(double beta, double alpha);

ScatteringStateExp scattering_state(const StepExpParams& params, double beta);

std::complex<double> eigenfunction(const StepExpParams& params, const BoundStateExp& state,
                                   double x);
std::complex<double> eigenfunction(const StepExpParams& params,
                                   const ScatteringStateExp& state, double x);

} // namespace stepwell::stepexp
