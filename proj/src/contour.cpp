// Integral-representation evaluations in the complex t-plane.
//
// Airy: E(y) = int exp(t^3/3 + (beta+y) t) dt along polyline paths joining
// the decay sectors pi/6 < phi + 2n pi/3 < pi/2.  The three path classes run
// between sector bisectors (e^{+i pi/3}, e^{-i pi/3}, e^{i pi}) through the
// origin.  Along the bisectors the cubic is real negative, so the only
// oscillation left is the linear term on the +-pi/3 legs.
//
// Bessel: u(z) = int sinh(t)^{2 nu} e^{-z cosh t} z^nu dt along the
// fundamental semi-infinite ([0, T] real) and finite ([0, i pi]) paths.  For
// imaginary order the factor sinh^{2 nu} oscillates like exp(2 i s ln t) at
// the endpoints, so those legs get geometrically graded panels.

#include "stepwell/contour.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "stepwell/gauss.hpp"

namespace stepwell::specfun {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

// Radius where Re(t^3/3 + w t) along the worst leg has dropped 45 e-folds.
double airy_truncation_radius(double w) {
    const double aw = std::abs(w);
    double lo = std::cbrt(3.0 * 45.0);
    double hi = std::max(lo * 2.0, 2.0 * std::sqrt(3.0 * aw) + lo);
    auto g = [&](double r) { return r * r * r / 3.0 - aw * r - 45.0; };
    while (g(hi) < 0.0) hi *= 2.0;
    for (int i = 0; i < 200 && hi - lo > 1e-9 * hi; ++i) {
        double mid = 0.5 * (lo + hi);
        (g(mid) < 0.0 ? lo : hi) = mid;
    }
    return hi;
}

cplx integrate_leg(const std::function<cplx(cplx)>& f, cplx a, cplx b, int n_panels,
                   const GaussRule& rule) {
    const cplx d = b - a;
    cplx total{0.0, 0.0};
    for (int p = 0; p < n_panels; ++p) {
        const double u0 = static_cast<double>(p) / n_panels;
        const double u1 = static_cast<double>(p + 1) / n_panels;
        const double mid = 0.5 * (u0 + u1), half = 0.5 * (u1 - u0);
        cplx acc{0.0, 0.0};
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double u = mid + half * rule.nodes[i];
            acc += rule.weights[i] * f(a + u * d);
        }
        total += acc * (half * d);
    }
    return total;
}

// Lanczos approximation, good to ~1e-13 relative for moderate |z|.
cplx complex_gamma(cplx z) {
    static const double g = 7.0;
    static const double coef[9] = {
        0.99999999999980993,    676.5203681218851,     -1259.1392167224028,
        771.32342877765313,     -176.61502916214059,   12.507343278686905,
        -0.13857109526572012,   9.9843695780195716e-6, 1.5056327351493116e-7};
    if (z.real() < 0.5)
        return kPi / (std::sin(kPi * z) * complex_gamma(1.0 - z));
    z -= 1.0;
    cplx x = coef[0];
    for (int i = 1; i < 9; ++i) x += coef[i] / (z + static_cast<double>(i));
    const cplx t = z + g + 0.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

} // namespace

ContourPath ContourPath::airy_path(ContourLabel label, double beta_plus_y) {
    const double R = airy_truncation_radius(beta_plus_y);
    const cplx up = R * std::polar(1.0, kPi / 3.0);
    const cplx down = R * std::polar(1.0, -kPi / 3.0);
    const cplx left = R * std::polar(1.0, kPi);
    ContourPath path;
    path.label = label;
    path.truncation_radius = R;
    switch (label) {
        case ContourLabel::Gamma1: path.waypoints = {left, {0.0, 0.0}, up}; break;
        case ContourLabel::Gamma2: path.waypoints = {down, {0.0, 0.0}, left}; break;
        case ContourLabel::Gamma3: path.waypoints = {down, {0.0, 0.0}, up}; break;
        default: throw std::invalid_argument("airy_path: not an Airy path label");
    }
    return path;
}

ContourPath ContourPath::bessel_path(ContourLabel label, double z) {
    ContourPath path;
    path.label = label;
    if (label == ContourLabel::BesselSemiInfinite) {
        if (!(z > 0.0)) throw std::domain_error("bessel_path: z > 0");
        const double T = std::acosh(1.0 + (40.0 * std::numbers::ln10 + 20.0) / z);
        path.truncation_radius = T;
        path.waypoints = {{0.0, 0.0}, {T, 0.0}};
    } else if (label == ContourLabel::BesselFinite) {
        path.truncation_radius = kPi;
        path.waypoints = {{0.0, 0.0}, {0.0, kPi}};
    } else {
        throw std::invalid_argument("bessel_path: not a Bessel path label");
    }
    return path;
}

std::complex<double> airy_contour(double y, double beta, const ContourPath& path,
                                  int n_quad) {
    if (path.label != ContourLabel::Gamma1 && path.label != ContourLabel::Gamma2 &&
        path.label != ContourLabel::Gamma3)
        throw std::invalid_argument("airy_contour: path must be Gamma1/Gamma2/Gamma3");
    if (n_quad < 64) throw std::invalid_argument("airy_contour: n_quad >= 64");

    const double w = beta + y;
    auto f = [w](cplx t) { return std::exp(t * t * t / 3.0 + w * t); };

    const GaussRule& rule = gauss_legendre(16);
    const int n_legs = static_cast<int>(path.waypoints.size()) - 1;
    const int panels_per_leg = std::max(1, n_quad / (16 * n_legs));
    cplx total{0.0, 0.0};
    for (int l = 0; l < n_legs; ++l)
        total += integrate_leg(f, path.waypoints[l], path.waypoints[l + 1],
                               panels_per_leg, rule);
    return total;
}

std::complex<double> airy_contour_converged(double y, double beta, ContourLabel label,
                                            double tol) {
    const ContourPath path = ContourPath::airy_path(label, beta + y);
    int n = 256;
    cplx coarse = airy_contour(y, beta, path, n);
    for (int iter = 0; iter < 8; ++iter) {
        n *= 2;
        cplx fine = airy_contour(y, beta, path, n);
        if (std::abs(fine - coarse) <= tol * std::max(1.0, std::abs(fine)))
            return fine;
        coarse = fine;
    }
    throw std::runtime_error("airy_contour_converged: quadrature did not settle");
}

std::complex<double> bessel_contour(std::complex<double> nu, double z,
                                    const ContourPath& path, int n_quad) {
    if (!(z > 0.0)) throw std::domain_error("bessel_contour: z > 0");
    const GaussRule& rule = gauss_legendre(16);
    const double s = std::abs(nu.imag());
    // Endpoint grading: keep the exp(2 nu ln t) phase change per panel bounded.
    const double ratio = std::exp(std::min(0.7, kPi / (4.0 * std::max(s, 1.0))));
    const double delta = 1e-12;

    auto graded_integral = [&](const std::function<cplx(double)>& f, double from,
                               double to) {
        // geometric panels [delta, from_scale] then uniform up to `to`
        cplx acc{0.0, 0.0};
        double a = delta;
        while (a < std::min(1.0, to)) {
            double b = std::min(a * ratio, std::min(1.0, to));
            acc += integrate_leg([&](cplx t) { return f(t.real()); }, cplx{a, 0.0},
                                 cplx{b, 0.0}, 1, rule);
            a = b;
            if (b >= std::min(1.0, to)) break;
        }
        if (to > 1.0) {
            const int n_uniform =
                std::max(static_cast<int>(std::ceil((to - 1.0) / 0.5)),
                         std::max(1, n_quad / 32));
            acc += integrate_leg([&](cplx t) { return f(t.real()); }, cplx{1.0, 0.0},
                                 cplx{to, 0.0}, n_uniform, rule);
        }
        (void)from;
        return acc;
    };

    const cplx two_nu = 2.0 * nu;
    if (path.label == ContourLabel::BesselSemiInfinite) {
        auto f = [&](double t) {
            return std::exp(two_nu * std::log(std::sinh(t)) - z * std::cosh(t));
        };
        return graded_integral(f, 0.0, path.truncation_radius);
    }
    if (path.label == ContourLabel::BesselFinite) {
        // t = i theta: sinh(i theta) = i sin(theta), dt = i d(theta)
        auto f = [&](double theta) {
            const cplx log_sinh = std::log(std::sin(theta)) + cplx{0.0, kPi / 2.0};
            return std::exp(two_nu * log_sinh - z * std::cos(theta));
        };
        // grade both endpoints: split at pi/2 and mirror
        auto g_lo = graded_integral(f, 0.0, kPi / 2.0);
        auto g_hi = graded_integral([&](double u) { return f(kPi - u); }, 0.0, kPi / 2.0);
        return cplx{0.0, 1.0} * (g_lo + g_hi);
    }
    throw std::invalid_argument("bessel_contour: path must be a Bessel path");
}

std::complex<double> bessel_k_contour(std::complex<double> nu, double z, int n_quad) {
    const ContourPath path = ContourPath::bessel_path(ContourLabel::BesselSemiInfinite, z);
    const cplx pref = std::sqrt(kPi) * std::exp(nu * std::log(z / 2.0)) /
                      complex_gamma(nu + 0.5);
    return pref * bessel_contour(nu, z, path, n_quad);
}

std::complex<double> bessel_i_contour(std::complex<double> nu, double z, int n_quad) {
    const ContourPath path = ContourPath::bessel_path(ContourLabel::BesselFinite, z);
    const cplx pref = std::exp(nu * std::log(z / 2.0)) /
                      (std::sqrt(kPi) * complex_gamma(nu + 0.5));
    // the path integral carries i from dt = i d(theta) and the principal
    // branch of sinh(i theta)^{2 nu} = (i sin theta)^{2 nu}; the normalized
    // representation uses the real-base power sin(theta)^{2 nu}, so divide
    // out i e^{i pi nu}
    const cplx conv = cplx{0.0, 1.0} * std::exp(cplx{0.0, kPi} * nu);
    return pref * bessel_contour(nu, z, path, n_quad) / conv;
}

} // namespace stepwell::specfun
