#include "stepwell/steplinear.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "stepwell/airy.hpp"
#include "stepwell/gauss.hpp"

namespace stepwell::steplinear {

using specfun::airy;
using specfun::AiryPair;
using specfun::AiryWant;
using specfun::AiryZeroKind;

namespace {

constexpr double kThresholdGuard = 1e-8;

void check_params(const StepLinearParams& p) {
    if (!(p.M > 0.0 && p.U0 > 0.0 && p.m > 0.0 && p.hbar > 0.0))
        throw std::invalid_argument("StepLinearParams: all parameters must be positive");
}

// Cleared form of the eigenvalue condition Ai'/Ai = sqrt(beta0-beta); shares
// its roots and stays finite at the Ai zeros.
double bound_condition(double beta, double beta0) {
    AiryPair a = airy(-beta, AiryWant::ValuePair);
    return a.ai_prime - std::sqrt(beta0 - beta) * a.ai;
}

double bisect_bound_root(double lo, double hi, double flo, double beta0) {
    for (int i = 0; i < 200 && hi - lo > 1e-12 * std::max(1.0, hi); ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = bound_condition(mid, beta0);
        if (fm == 0.0) return mid;
        if (flo * fm < 0.0) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

// Raw (C=1) L2 norm: (1/alpha) int_{-beta}^{30} Ai(u)^2 du + Ai(-beta)^2/(2k).
double raw_norm(const StepLinearParams& p, double beta) {
    const double k = p.alpha * std::sqrt(p.beta0 - beta);
    auto ai2 = [](double u) {
        const double v = airy(u, AiryWant::Ai).ai;
        return v * v;
    };
    const int base_panels = std::max(16, static_cast<int>((beta + 30.0) * 0.8));
    const double left = integrate_adaptive(ai2, -beta, 30.0, 1e-10, 1e-14, 16,
                                           base_panels) / p.alpha;
    const double a = airy(-beta, AiryWant::Ai).ai;
    return std::sqrt(left + a * a / (2.0 * k));
}

double delta_classical(double beta) {
    return (4.0 / 3.0) * beta * std::sqrt(beta) - std::numbers::pi / 2.0;
}

// Raw lifted phase: principal 2 arctan plus 2 pi per Ai zero below beta (the
// arctan branch flips exactly at those poles).
double phase_raw(double beta, double beta0) {
    AiryPair a = airy(-beta, AiryWant::ValuePair);
    const double root_x = std::sqrt(beta - beta0);
    double principal;
    if (a.ai == 0.0) {
        principal = std::numbers::pi;
    } else {
        principal = 2.0 * std::atan(a.ai_prime / (root_x * a.ai));
    }
    return principal + 2.0 * std::numbers::pi * specfun::airy_zero_count(beta);
}

// Branch constant pinning the lift to the semiclassical phase at large beta.
double pin_constant(double beta0) {
    static std::map<double, double> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(beta0);
    if (it != cache.end()) return it->second;
    const double beta_pin = std::max(4.0 * beta0 + 50.0, 100.0);
    const double raw = phase_raw(beta_pin, beta0);
    const double c = 2.0 * std::numbers::pi *
                     std::round((delta_classical(beta_pin) - raw) /
                                (2.0 * std::numbers::pi));
    cache.emplace(beta0, c);
    return c;
}

} // namespace

StepLinearParams StepLinearParams::from_physical(double M, double U0, double m,
                                                 double hbar) {
    StepLinearParams p;
    p.M = M;
    p.U0 = U0;
    p.m = m;
    p.hbar = hbar;
    check_params(p);
    p.alpha = std::cbrt(2.0 * m * M / (hbar * hbar));
    p.beta0 = p.alpha * U0 / M;
    return p;
}

StepLinearParams StepLinearParams::from_beta0(double beta0) {
    if (!(beta0 > 0.0)) throw std::invalid_argument("from_beta0: beta0 > 0");
    StepLinearParams p;
    p.hbar = 1.0;
    p.m = 1.0;
    p.M = 0.5; // alpha = (2 m M / hbar^2)^{1/3} = 1 exactly
    p.alpha = 1.0;
    p.U0 = 0.5 * beta0;
    p.beta0 = beta0;
    return p;
}

std::vector<BoundState> bound_states(const StepLinearParams& params,
                                     std::size_t max_states) {
    check_params(params);
    const double beta0 = params.beta0;
    std::vector<BoundState> states;

    const double fine_from = beta0 * 0.95;
    double beta = 1e-9;
    double f_prev = bound_condition(beta, beta0);
    while (beta < beta0 && states.size() < max_states) {
        double step = std::min(0.1, 0.5 * std::numbers::pi / std::sqrt(std::max(beta, 1.0)));
        if (beta >= fine_from) step = std::min(step, 1e-3);
        double next = std::min(beta + step, beta0 * (1.0 - 1e-12));
        if (next <= beta) break;
        const double f_next = bound_condition(next, beta0);
        if (f_prev == 0.0 || f_prev * f_next < 0.0) {
            const double root = (f_prev == 0.0)
                                    ? beta
                                    : bisect_bound_root(beta, next, f_prev, beta0);
            BoundState s;
            s.n = static_cast<int>(states.size()) + 1;
            s.beta = root;
            s.energy = params.energy_of_beta(root);
            s.norm = raw_norm(params, root);
            s.C = 1.0 / s.norm;
            s.F = airy(-root, AiryWant::Ai).ai / s.norm;
            states.push_back(s);
        }
        beta = next;
        f_prev = f_next;
    }
    return states;
}

double level_spacing_asymptotic(int n) {
    if (n < 1) throw std::invalid_argument("level_spacing_asymptotic: n >= 1");
    // d/dn of the inverted phase expansion [(3 pi/8)(4n-1)]^{2/3}; checked
    // against the exact zero spacings (0.3% at n = 50).
    return std::cbrt(2.0 / (3.0 * n)) * std::pow(std::numbers::pi, 2.0 / 3.0);
}

double phase_shift(const StepLinearParams& params, double beta) {
    check_params(params);
    if (!(beta > params.beta0))
        throw std::domain_error("phase_shift: beta must exceed beta0 (continuum)");
    return phase_raw(beta, params.beta0) + pin_constant(params.beta0);
}

DelaySample delay(const StepLinearParams& params, double beta) {
    check_params(params);
    const double X = beta - params.beta0;
    if (!(X > kThresholdGuard))
        throw std::domain_error("delay: beta too close to the threshold beta0");
    AiryPair p = airy(-beta, AiryWant::ValuePair);
    const double A = p.ai, Ap = p.ai_prime;
    const double num = beta * A * A + Ap * Ap - A * Ap / (2.0 * X);
    const double den = X * A * A + Ap * Ap;
    DelaySample out;
    out.beta = beta;
    out.tau = 2.0 * std::sqrt(X) * num / den;
    out.tau_classical = 2.0 * std::sqrt(beta);
    return out;
}

std::vector<Resonance> resonances(const StepLinearParams& params, double beta_max) {
    check_params(params);
    const double beta0 = params.beta0;
    if (!(beta_max > beta0)) throw std::domain_error("resonances: beta_max > beta0");

    auto tau_excess = [&](double b) { return delay(params, b).tau - 2.0 * std::sqrt(b); };

    std::vector<Resonance> found;
    // Resonances sit near the Ai' zeros; search a window around each.
    for (int n = 1;; ++n) {
        const double eta = specfun::airy_zero(n, AiryZeroKind::AiPrime);
        if (eta >= beta_max) break;
        if (eta <= beta0 + kThresholdGuard * 10.0) continue;
        const double eta_prev = (n > 1) ? specfun::airy_zero(n - 1, AiryZeroKind::AiPrime)
                                        : 0.0;
        const double eta_next = specfun::airy_zero(n + 1, AiryZeroKind::AiPrime);
        double lo = std::max({0.5 * (eta_prev + eta), beta0 + 50.0 * kThresholdGuard,
                              eta - 0.45});
        double hi = std::min({0.5 * (eta + eta_next), beta_max, eta + 0.45});
        if (hi <= lo) continue;

        // dense scan, then golden-section polish around the best sample
        const int n_scan = 400;
        double best_b = lo, best_v = -1e300;
        for (int i = 0; i <= n_scan; ++i) {
            const double b = lo + (hi - lo) * i / n_scan;
            const double v = tau_excess(b);
            if (v > best_v) {
                best_v = v;
                best_b = b;
            }
        }
        if (best_v <= 0.0) continue;
        if (best_b <= lo + (hi - lo) / n_scan || best_b >= hi - (hi - lo) / n_scan)
            continue; // maximum at the window edge: threshold blow-up, not a peak

        double a = best_b - (hi - lo) / n_scan, b = best_b + (hi - lo) / n_scan;
        const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
        double c = b - gr * (b - a), d = a + gr * (b - a);
        double fc = tau_excess(c), fd = tau_excess(d);
        for (int i = 0; i < 80 && b - a > 1e-10 * std::max(1.0, b); ++i) {
            if (fc > fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - gr * (b - a);
                fc = tau_excess(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + gr * (b - a);
                fd = tau_excess(d);
            }
        }
        Resonance r;
        r.beta_center = 0.5 * (a + b);
        r.eta_n = eta;
        r.height = delay(params, r.beta_center).tau;
        const double half = 0.5 * tau_excess(r.beta_center);

        auto half_crossing = [&](double from, double to) {
            // from: peak side (excess > half); to: window edge
            double f_lo = tau_excess(from) - half;
            double step_count = 200.0;
            double prev = from, fprev = f_lo;
            for (int i = 1; i <= static_cast<int>(step_count); ++i) {
                const double bb = from + (to - from) * i / step_count;
                const double fb = tau_excess(bb) - half;
                if (fprev * fb <= 0.0) {
                    // linear interpolation of the crossing
                    return prev + (bb - prev) * fprev / (fprev - fb);
                }
                prev = bb;
                fprev = fb;
            }
            return to; // clamped at the search window
        };
        const double wl = half_crossing(r.beta_center, lo);
        const double wr = half_crossing(r.beta_center, hi);
        r.width = wr - wl;
        found.push_back(r);
    }
    return found;
}

ScatteringState scattering_state(const StepLinearParams& params, double beta) {
    check_params(params);
    if (!(beta > params.beta0)) throw std::domain_error("scattering_state: beta > beta0");
    ScatteringState st;
    st.beta = beta;
    const double X = beta - params.beta0;
    st.k = params.alpha * std::sqrt(X);
    st.delta = phase_shift(params, beta);
    AiryPair a = airy(-beta, AiryWant::ValuePair);
    // Pi = 2 [Ai + (alpha/(i k)) Ai']^{-1};  alpha/k = 1/sqrt(X)
    const std::complex<double> den(a.ai, -a.ai_prime / std::sqrt(X));
    st.Pi = 2.0 / den;
    return st;
}

std::complex<double> eigenfunction(const StepLinearParams& params, const BoundState& state,
                                   double x) {
    const double k = params.alpha * std::sqrt(params.beta0 - state.beta);
    if (x <= 0.0)
        return state.C * airy(-params.alpha * x - state.beta, AiryWant::Ai).ai;
    return state.F * std::exp(-k * x);
}

std::complex<double> eigenfunction(const StepLinearParams& params,
                                   const ScatteringState& state, double x) {
    const double inv_sqrt2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    if (x <= 0.0)
        return inv_sqrt2pi * state.Pi *
               airy(-params.alpha * x - state.beta, AiryWant::Ai).ai;
    const std::complex<double> i_unit(0.0, 1.0);
    return inv_sqrt2pi * (std::exp(-i_unit * state.k * x) +
                          std::exp(i_unit * (state.k * x + state.delta)));
}

} // namespace stepwell::steplinear
