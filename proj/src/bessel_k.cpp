// Imaginary-order modified Bessel function and its zero structure.
//
// Everything funnels through one fused quadrature pass (kernels::bessel_sums)
// that accumulates the value, the argument derivative, and the two
// order-derivative integrands over a shared set of Gauss-Legendre panels.

#include "stepwell/bessel_k.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "stepwell/gauss.hpp"
#include "stepwell/kernels.hpp"

namespace stepwell::specfun {

namespace {

constexpr double kTailDecades = 40.0;
constexpr double kUnderflowX = 690.0; // e^{-x} below absolute significance

struct QuadGrid {
    std::vector<double> t;
    std::vector<double> w;
};

// Panels on [0, T]; width tied to the cos(s t) period once s is large.
// Boundaries sit at fixed multiples of the width (the last panel is partial)
// so that perturbing x only moves the panel layout inside the decayed tail;
// this keeps the evaluation smooth in x at the 1e-15 level, which the
// finite-difference consumers rely on.
void build_grid(double s, double x, QuadGrid& grid) {
    const double T = std::acosh(1.0 + kTailDecades * std::numbers::ln10 / x);
    const double width = (s > 12.0) ? std::min(0.3, 6.0 / s) : 0.3;
    const GaussRule& rule = gauss_legendre(16);

    grid.t.clear();
    grid.w.clear();
    grid.t.reserve(16 * (static_cast<std::size_t>(T / width) + 1));
    grid.w.reserve(grid.t.capacity());
    for (double a = 0.0; a < T; a += width) {
        const double b = std::min(a + width, T);
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (int i = 0; i < 16; ++i) {
            grid.t.push_back(mid + half * rule.nodes[i]);
            grid.w.push_back(half * rule.weights[i]);
        }
    }
}

void check_inputs(double s, double x) {
    if (!std::isfinite(s) || !std::isfinite(x))
        throw std::domain_error("bessel_k_imag: non-finite input");
    if (s < 0.0) throw std::domain_error("bessel_k_imag: requires s >= 0");
    if (x <= 0.0) throw std::domain_error("bessel_k_imag: requires x > 0");
}

kernels::BesselSums fused_sums(double s, double x) {
    thread_local QuadGrid grid;
    build_grid(s, x, grid);
    return kernels::active().bessel_sums(x, s, grid.t.data(), grid.w.data(),
                                         grid.t.size());
}

bool underflows(double x) { return x > kUnderflowX; }

void signal_underflow(KStatus* status) {
    if (status) {
        status->underflow = true;
        return;
    }
    throw std::underflow_error("bessel_k_imag: integrand below absolute significance");
}

// Small-s order derivatives: sin(st)/(2s) -> t/2, evaluated directly so the
// beta -> 0+ limit stays finite.
struct SmallSDeriv {
    double dbeta;
    double dx_dbeta;
};
SmallSDeriv small_s_order_derivs(double s, double x) {
    thread_local QuadGrid grid;
    build_grid(1.0, x, grid);
    double acc2 = 0.0, acc2c = 0.0;
    for (std::size_t i = 0; i < grid.t.size(); ++i) {
        const double t = grid.t[i];
        const double c = std::cosh(t);
        const double e = grid.w[i] * std::exp(-x * c) * t * t;
        const double u = s * t;
        const double sinc_term = 1.0 - u * u / 6.0;
        acc2 += e * sinc_term;
        acc2c += e * c * sinc_term;
    }
    return {-0.5 * acc2, 0.5 * acc2c};
}

} // namespace

double bessel_k_imag(double s, double x, KStatus* status) {
    check_inputs(s, x);
    if (status) *status = {};
    if (underflows(x)) {
        signal_underflow(status);
        return 0.0;
    }
    return fused_sums(s, x).f;
}

double bessel_k_imag_dx(double s, double x, KStatus* status) {
    check_inputs(s, x);
    if (status) *status = {};
    if (underflows(x)) {
        signal_underflow(status);
        return 0.0;
    }
    return -fused_sums(s, x).fx;
}

double bessel_k_imag_dbeta(double beta, double x, KStatus* status) {
    if (!(beta >= 0.0)) throw std::domain_error("bessel_k_imag_dbeta: beta >= 0");
    const double s = std::sqrt(beta);
    check_inputs(s, x);
    if (status) *status = {};
    if (underflows(x)) {
        signal_underflow(status);
        return 0.0;
    }
    if (s < 1e-6) return small_s_order_derivs(s, x).dbeta;
    return -fused_sums(s, x).fs / (2.0 * s);
}

KBundle bessel_k_imag_bundle(double beta, double x) {
    if (!(beta >= 0.0)) throw std::domain_error("bessel_k_imag_bundle: beta >= 0");
    const double s = std::sqrt(beta);
    check_inputs(s, x);
    KBundle out;
    if (underflows(x)) {
        out.underflow = true;
        return out;
    }
    const kernels::BesselSums sums = fused_sums(s, x);
    out.k = sums.f;
    out.k_dx = -sums.fx;
    if (s < 1e-6) {
        const SmallSDeriv d = small_s_order_derivs(s, x);
        out.k_dbeta = d.dbeta;
        out.k_dx_dbeta = d.dx_dbeta;
    } else {
        out.k_dbeta = -sums.fs / (2.0 * s);
        out.k_dx_dbeta = sums.fxs / (2.0 * s);
    }
    return out;
}

double bessel_k_imag_asymptotic(double beta, double alpha) {
    if (!(beta >= 25.0))
        throw std::domain_error("bessel_k_imag_asymptotic: requires beta >= 25");
    if (!(alpha > 0.0))
        throw std::domain_error("bessel_k_imag_asymptotic: requires alpha > 0");
    const double sb = std::sqrt(beta);
    const double phase = alpha * alpha / (4.0 * sb) - sb +
                         sb * std::log(2.0 * sb / alpha) + std::numbers::pi / 4.0;
    return std::sqrt(2.0 * std::numbers::pi / sb) *
           std::exp(-std::numbers::pi * sb / 2.0) * std::sin(phase);
}

namespace {

// Zeros in beta of K and K' at fixed alpha, found by marching the s = sqrt(beta)
// axis and bisecting sign changes.  Cached per (alpha, kind).
struct ZeroCache {
    std::vector<double> zeros_beta;
    double s_frontier = 0.05;
    double last_value = 0.0;
    bool primed = false;
};

double zero_eval(double s, double alpha, KZeroKind kind) {
    const kernels::BesselSums sums = fused_sums(s, alpha);
    return kind == KZeroKind::K ? sums.f : -sums.fx;
}

double scan_step(double s, double alpha) {
    const double freq = std::max(std::log(2.0 * std::max(s, 0.05) / alpha), 0.7);
    return std::min(0.25, std::numbers::pi / (4.0 * freq));
}

// Past this s the e^{-pi s/2} envelope sinks into the quadrature noise floor
// and sign changes stop being meaningful.
double s_ceiling(double alpha) { return 2.0 * (36.5 + alpha) / std::numbers::pi; }

void prime(ZeroCache& cache, double alpha, KZeroKind kind) {
    if (!cache.primed) {
        cache.last_value = zero_eval(cache.s_frontier, alpha, kind);
        cache.primed = true;
    }
}

// One scan step of the frontier; records a zero if the sign flips.
void advance_frontier(ZeroCache& cache, double alpha, KZeroKind kind) {
    const double s0 = cache.s_frontier;
    const double s1 = s0 + scan_step(s0, alpha);
    const double v1 = zero_eval(s1, alpha, kind);
    if (cache.last_value == 0.0) {
        cache.zeros_beta.push_back(s0 * s0);
    } else if (cache.last_value * v1 < 0.0) {
        double lo = s0, hi = s1, flo = cache.last_value;
        for (int i = 0; i < 120 && hi - lo > 1e-12 * hi; ++i) {
            const double mid = 0.5 * (lo + hi);
            const double fm = zero_eval(mid, alpha, kind);
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
        const double s_root = 0.5 * (lo + hi);
        cache.zeros_beta.push_back(s_root * s_root);
    }
    cache.s_frontier = s1;
    cache.last_value = v1;
}

void extend_to_count(ZeroCache& cache, double alpha, KZeroKind kind, std::size_t n) {
    prime(cache, alpha, kind);
    const double s_max = s_ceiling(alpha);
    while (cache.zeros_beta.size() < n) {
        if (cache.s_frontier > s_max)
            throw std::runtime_error(
                "bessel_k_zero: zero index beyond the double-precision envelope floor");
        advance_frontier(cache, alpha, kind);
    }
}

void extend_to_beta(ZeroCache& cache, double alpha, KZeroKind kind, double beta) {
    const double target_s = std::sqrt(beta);
    if (target_s > s_ceiling(alpha))
        throw std::runtime_error(
            "bessel_k_zero_count: beta beyond the double-precision envelope floor");
    prime(cache, alpha, kind);
    while (cache.s_frontier <= target_s) advance_frontier(cache, alpha, kind);
}

std::map<std::pair<double, int>, ZeroCache>& zero_caches() {
    static std::map<std::pair<double, int>, ZeroCache> caches;
    return caches;
}
std::mutex& zero_mutex() {
    static std::mutex m;
    return m;
}

} // namespace

double bessel_k_zero(int n, double alpha, KZeroKind kind) {
    if (n < 1) throw std::invalid_argument("bessel_k_zero: n >= 1");
    if (!(alpha > 0.0)) throw std::domain_error("bessel_k_zero: alpha > 0");
    std::lock_guard<std::mutex> lock(zero_mutex());
    ZeroCache& cache = zero_caches()[{alpha, static_cast<int>(kind)}];
    extend_to_count(cache, alpha, kind, static_cast<std::size_t>(n));
    return cache.zeros_beta[n - 1];
}

int bessel_k_zero_count(double beta, double alpha) {
    if (!(alpha > 0.0)) throw std::domain_error("bessel_k_zero_count: alpha > 0");
    std::lock_guard<std::mutex> lock(zero_mutex());
    ZeroCache& cache = zero_caches()[{alpha, static_cast<int>(KZeroKind::K)}];
    extend_to_beta(cache, alpha, KZeroKind::K, beta);
    int count = 0;
    for (double z : cache.zeros_beta)
        if (z <= beta) ++count;
    return count;
}

} // namespace stepwell::specfun
