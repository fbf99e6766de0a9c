#include "stepwell/stepexp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "stepwell/bessel_k.hpp"
#include "stepwell/gauss.hpp"
#include "stepwell/lambert.hpp"

namespace stepwell::stepexp {

using specfun::bessel_k_imag;
using specfun::bessel_k_imag_bundle;
using specfun::KBundle;

namespace {

constexpr double kThresholdGuard = 1e-8;

void check_params(const StepExpParams& p) {
    if (!(p.kappa > 0.0 && p.sigma > 0.0 && p.U0 > 0.0 && p.m > 0.0 && p.hbar > 0.0))
        throw std::invalid_argument("StepExpParams: all parameters must be positive");
}

// Cleared eigenvalue condition alpha K' - sqrt(beta0-beta) K, sharing roots
// with K'/K = sqrt(beta0-beta)/alpha.
double bound_condition(double beta, double beta0, double alpha) {
    const KBundle kb = bessel_k_imag_bundle(beta, alpha);
    return alpha * kb.k_dx - std::sqrt(beta0 - beta) * kb.k;
}

double envelope_phase(double beta, double alpha) {
    const double sb = std::sqrt(beta);
    return -sb + sb * std::log(2.0 * sb / alpha) + std::numbers::pi / 4.0;
}

double delta_classical(double beta, double alpha) {
    // 2 (phase - pi/4) - pi/2, the lift of 2 arctan(-cot(phase))
    return 2.0 * envelope_phase(beta, alpha) - std::numbers::pi / 2.0 -
           std::numbers::pi / 2.0;
}

double phase_raw(double beta, double beta0, double alpha) {
    const KBundle kb = bessel_k_imag_bundle(beta, alpha);
    const double root_x = std::sqrt(beta - beta0);
    double principal;
    if (kb.k == 0.0) {
        principal = std::numbers::pi;
    } else {
        principal = 2.0 * std::atan(alpha * kb.k_dx / (root_x * kb.k));
    }
    return principal +
           2.0 * std::numbers::pi * specfun::bessel_k_zero_count(beta, alpha);
}

double pin_constant(double beta0, double alpha) {
    static std::map<std::pair<double, double>, double> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find({beta0, alpha});
    if (it != cache.end()) return it->second;
    const double beta_pin = std::max(2.0 * beta0 + 25.0, 50.0);
    const double raw = phase_raw(beta_pin, beta0, alpha);
    const double c = 2.0 * std::numbers::pi *
                     std::round((delta_classical(beta_pin, alpha) - raw) /
                                (2.0 * std::numbers::pi));
    cache.emplace(std::make_pair(beta0, alpha), c);
    return c;
}

// Raw (C=1) L2 norm: 2 sigma int_alpha^{z_max} K_{is}(z)^2 dz/z + K(alpha)^2/(2k).
double raw_norm(const StepExpParams& p, double beta) {
    const double s = std::sqrt(beta);
    const double k = std::sqrt(p.beta0 - beta) / (2.0 * p.sigma);
    const double z_max = std::max(p.alpha, s) + 45.0;
    auto integrand = [&](double z) {
        const double v = bessel_k_imag(s, z);
        return v * v / z;
    };
    const int base_panels = std::max(32, static_cast<int>((z_max - p.alpha) * 2.0));
    const double left = 2.0 * p.sigma *
                        integrate_adaptive(integrand, p.alpha, z_max, 1e-9, 1e-16, 16,
                                           base_panels);
    const double ka = bessel_k_imag(s, p.alpha);
    return std::sqrt(left + ka * ka / (2.0 * k));
}

} // namespace

StepExpParams StepExpParams::from_physical(double kappa, double sigma, double U0,
                                           double m, double hbar) {
    StepExpParams p;
    p.kappa = kappa;
    p.sigma = sigma;
    p.U0 = U0;
    p.m = m;
    p.hbar = hbar;
    check_params(p);
    const double scale = 8.0 * m * sigma * sigma / (hbar * hbar);
    p.alpha = std::sqrt(scale * kappa);
    p.beta0 = scale * (U0 + kappa);
    return p;
}

StepExpParams StepExpParams::from_dimensionless(double beta0, double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("from_dimensionless: alpha > 0");
    if (!(beta0 > alpha * alpha))
        throw std::invalid_argument("from_dimensionless: beta0 must exceed alpha^2");
    StepExpParams p;
    p.hbar = 1.0;
    p.m = 1.0;
    p.sigma = 1.0 / (2.0 * std::sqrt(2.0)); // 8 m sigma^2 / hbar^2 = 1
    p.kappa = alpha * alpha;
    p.U0 = beta0 - alpha * alpha;
    p.alpha = alpha;
    p.beta0 = beta0;
    return p;
}

std::vector<BoundStateExp> bound_states(const StepExpParams& params,
                                        std::size_t max_states) {
    check_params(params);
    const double beta_min = params.alpha * params.alpha;
    const double beta0 = params.beta0;
    std::vector<BoundStateExp> states;
    if (beta0 <= beta_min) return states;

    const double fine_from = beta_min + 0.95 * (beta0 - beta_min);
    double beta = beta_min + 1e-9 * std::max(1.0, beta_min);
    double f_prev = bound_condition(beta, beta0, params.alpha);
    while (beta < beta0 && states.size() < max_states) {
        double step = 0.25;
        if (beta >= fine_from) step = std::min(step, 1e-3 * std::max(1.0, beta0));
        double next = std::min(beta + step, beta0 * (1.0 - 1e-12));
        if (next <= beta) break;
        const double f_next = bound_condition(next, beta0, params.alpha);
        if (f_prev == 0.0 || f_prev * f_next < 0.0) {
            double lo = beta, hi = next, flo = f_prev;
            for (int i = 0; i < 200 && hi - lo > 1e-12 * std::max(1.0, hi); ++i) {
                const double mid = 0.5 * (lo + hi);
                const double fm = bound_condition(mid, beta0, params.alpha);
                if (fm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if (flo * fm < 0.0) {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
            }
            BoundStateExp s;
            s.n = static_cast<int>(states.size()) + 1;
            s.beta = 0.5 * (lo + hi);
            s.energy = params.energy_of_beta(s.beta);
            s.norm = raw_norm(params, s.beta);
            s.C = 1.0 / s.norm;
            s.F = bessel_k_imag(std::sqrt(s.beta), params.alpha) / s.norm;
            states.push_back(s);
        }
        beta = next;
        f_prev = f_next;
    }
    return states;
}

double well_zero_asymptotic(int n, double alpha) {
    if (n < 1) throw std::invalid_argument("well_zero_asymptotic: n >= 1");
    if (!(alpha > 0.0)) throw std::domain_error("well_zero_asymptotic: alpha > 0");
    const double c = (n - 0.25) * std::numbers::pi;
    const double w = specfun::lambert_w(2.0 * c / (alpha * std::numbers::e));
    return alpha * alpha * std::numbers::e * std::numbers::e / 4.0 * std::exp(2.0 * w);
}

double well_zero_asymptotic_log(int n, double alpha) {
    if (n < 1) throw std::invalid_argument("well_zero_asymptotic_log: n >= 1");
    const double L = std::log(2.0 * n * std::numbers::pi / (alpha * std::numbers::e));
    return n * n * std::numbers::pi * std::numbers::pi / (L * L);
}

double phase_shift(const StepExpParams& params, double beta) {
    check_params(params);
    if (!(beta > params.beta0))
        throw std::domain_error("phase_shift: beta must exceed beta0 (continuum)");
    return phase_raw(beta, params.beta0, params.alpha) +
           pin_constant(params.beta0, params.alpha);
}

DelaySampleExp delay(const StepExpParams& params, double beta) {
    check_params(params);
    const double X = beta - params.beta0;
    if (!(X > kThresholdGuard))
        throw std::domain_error("delay: beta too close to the threshold beta0");
    const double a = params.alpha;
    const KBundle kb = bessel_k_imag_bundle(beta, a);
    const double K = kb.k, Kp = kb.k_dx, Kd = kb.k_dbeta, Kpd = kb.k_dx_dbeta;
    const double num = Kpd * K - Kd * Kp - K * Kp / (2.0 * X);
    const double den = X * K * K + a * a * Kp * Kp;
    DelaySampleExp out;
    out.beta = beta;
    out.tau = 2.0 * std::sqrt(X) * a * num / den;
    out.tau_classical = std::log(2.0 * std::sqrt(beta) / a) / std::sqrt(beta);
    return out;
}

DelayAsymptotic delay_asymptotic_ratio(double beta, double alpha) {
    if (!(beta >= 25.0))
        throw std::domain_error("delay_asymptotic_ratio: requires beta >= 25");
    if (!(alpha > 0.0)) throw std::domain_error("delay_asymptotic_ratio: alpha > 0");
    const double sb = std::sqrt(beta);
    const double phase = envelope_phase(beta, alpha);
    DelayAsymptotic out;
    const double sn = std::sin(phase);
    const double s2 = std::sin(2.0 * phase);
    out.near_pole = std::min(std::abs(sn), std::abs(s2)) < 0.05;
    out.ratio = -(sb / alpha) / std::tan(phase);
    out.dlog = 1.0 / (2.0 * beta) - std::log(2.0 * sb / alpha) / (sb * s2);
    return out;
}

ScatteringStateExp scattering_state(const StepExpParams& params, double beta) {
    check_params(params);
    if (!(beta > params.beta0)) throw std::domain_error("scattering_state: beta > beta0");
    ScatteringStateExp st;
    st.beta = beta;
    const double X = beta - params.beta0;
    st.k = std::sqrt(X) / (2.0 * params.sigma);
    st.delta = phase_shift(params, beta);
    const KBundle kb = bessel_k_imag_bundle(beta, params.alpha);
    // Pi = 2 [K + (alpha/(2 i k sigma)) K']^{-1};  alpha/(2 sigma k) = alpha/sqrt(X)
    const std::complex<double> den(kb.k, -params.alpha * kb.k_dx / std::sqrt(X));
    st.Pi = 2.0 / den;
    return st;
}

std::complex<double> eigenfunction(const StepExpParams& params, const BoundStateExp& state,
                                   double x) {
    const double s = std::sqrt(state.beta);
    if (x <= 0.0) {
        const double z = params.alpha * std::exp(-x / (2.0 * params.sigma));
        specfun::KStatus status;
        const double v = bessel_k_imag(s, z, &status);
        return state.C * (status.underflow ? 0.0 : v);
    }
    const double k = std::sqrt(params.beta0 - state.beta) / (2.0 * params.sigma);
    return state.F * std::exp(-k * x);
}

std::complex<double> eigenfunction(const StepExpParams& params,
                                   const ScatteringStateExp& state, double x) {
    const double inv_sqrt2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    if (x <= 0.0) {
        const double z = params.alpha * std::exp(-x / (2.0 * params.sigma));
        specfun::KStatus status;
        const double v = bessel_k_imag(std::sqrt(state.beta), z, &status);
        return inv_sqrt2pi * state.Pi * (status.underflow ? 0.0 : v);
    }
    const std::complex<double> i_unit(0.0, 1.0);
    return inv_sqrt2pi * (std::exp(-i_unit * state.k * x) +
                          std::exp(i_unit * (state.k * x + state.delta)));
}

} // namespace stepwell::stepexp
