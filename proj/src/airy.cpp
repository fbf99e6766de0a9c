// Airy functions on the real line.
//
// Three regimes:
//   |x| <= 9   Maclaurin series, summed in double-double arithmetic.  The
//              series terms grow to ~e^zeta before cancelling (both signs of
//              x), so plain doubles would lose up to 16 digits at the seam;
//              the compensated sum keeps the result at full double accuracy.
//   x < -9     oscillatory expansion in zeta = 2|x|^{3/2}/3, eight terms in
//              each of the sine and cosine sums (truncation < 1e-13 at the
//              seam, falling fast beyond).
//   x > +9     exponential expansions with the same coefficient tables.
//
// Seam agreement is pinned by a dedicated test.

#include "stepwell/airy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "stepwell/ddouble.hpp"

namespace stepwell::specfun {

using detail::ddouble;

namespace {

constexpr double kSeam = 9.0;
constexpr int kAsymTermsPerSum = 8; // c_0..c_15 split across the two sums

// Ai(0) and -Ai'(0) to double-double precision.
constexpr ddouble kAi0{0.3550280538878172, 2.05233632436212e-17};
constexpr ddouble kMinusAip0{0.2588194037928068, -2.522243111610832e-17};
const double kSqrtPi = 1.7724538509055160273;
const double kSqrt3 = std::numbers::sqrt3;

struct SeriesSums {
    ddouble f, fp, g, gp;
    double cond; // largest |term| / |value| seen, for the error estimate
};

// Maclaurin sums of the two independent solutions f, g and derivatives:
//   f  = sum 3^k (1/3)_k x^{3k} / (3k)!
//   g  = sum 3^k (2/3)_k x^{3k+1} / (3k+1)!
SeriesSums airy_series_sums(double x) {
    const ddouble x2 = detail::dd_sqr(x);
    const ddouble x3 = x2 * x;

    SeriesSums out;
    double max_term = 1.0;

    ddouble term{1.0};
    ddouble sum{1.0};
    for (int k = 1; k < 300; ++k) {
        term = term * x3 / ((3.0 * k) * (3.0 * k - 1.0));
        sum = sum + term;
        max_term = std::max(max_term, std::abs(term.hi));
        if (std::abs(term.hi) < 1e-40 * (std::abs(sum.hi) + 1.0)) break;
    }
    out.f = sum;

    term = ddouble{x};
    sum = term;
    for (int k = 1; k < 300; ++k) {
        term = term * x3 / ((3.0 * k + 1.0) * (3.0 * k));
        sum = sum + term;
        max_term = std::max(max_term, std::abs(term.hi));
        if (std::abs(term.hi) < 1e-40 * (std::abs(sum.hi) + 1.0)) break;
    }
    out.g = sum;

    term = x2 / 2.0;
    sum = term;
    for (int k = 2; k < 300; ++k) {
        term = term * x3 / ((3.0 * k - 1.0) * (3.0 * k - 3.0));
        sum = sum + term;
        max_term = std::max(max_term, std::abs(term.hi));
        if (std::abs(term.hi) < 1e-40 * (std::abs(sum.hi) + 1.0)) break;
    }
    out.fp = sum;

    term = ddouble{1.0};
    sum = term;
    for (int k = 1; k < 300; ++k) {
        term = term * x3 / ((3.0 * k) * (3.0 * k - 2.0));
        sum = sum + term;
        max_term = std::max(max_term, std::abs(term.hi));
        if (std::abs(term.hi) < 1e-40 * (std::abs(sum.hi) + 1.0)) break;
    }
    out.gp = sum;

    out.cond = max_term;
    return out;
}

AiryPair airy_series(double x, AiryDiag* diag) {
    SeriesSums s = airy_series_sums(x);
    AiryPair out;
    out.method = AiryMethod::series;
    out.ai = (kAi0 * s.f - kMinusAip0 * s.g).value();
    out.ai_prime = (kAi0 * s.fp - kMinusAip0 * s.gp).value();
    out.bi = ((kAi0 * s.f + kMinusAip0 * s.g) * kSqrt3).value();
    out.bi_prime = ((kAi0 * s.fp + kMinusAip0 * s.gp) * kSqrt3).value();
    if (diag) {
        double scale = std::max({std::abs(out.ai), std::abs(out.bi), 1e-300});
        diag->err_estimate = 1e-32 * s.cond / scale + 1e-16;
    }
    return out;
}

const AsymptoticCoefficients& asym_coeffs() {
    static AsymptoticCoefficients tbl(2 * kAsymTermsPerSum);
    return tbl;
}

// Oscillatory side: x = -beta, beta >= 1.
AiryPair airy_negative_asymptotic(double beta, int terms_per_sum, AiryDiag* diag) {
    const AsymptoticCoefficients& cd = asym_coeffs();
    const double zeta = (2.0 / 3.0) * beta * std::sqrt(beta);
    const double inv_z2 = 1.0 / (zeta * zeta);

    double P = 0.0, Q = 0.0, R = 0.0, S = 0.0;
    // Horner in 1/zeta^2, highest term first.
    for (int k = terms_per_sum - 1; k >= 0; --k) {
        const double sg = (k % 2 == 0) ? 1.0 : -1.0;
        P = P * inv_z2 + sg * cd.c[2 * k];
        Q = Q * inv_z2 + sg * cd.c[2 * k + 1];
        R = R * inv_z2 + sg * cd.d[2 * k];
        S = S * inv_z2 + sg * cd.d[2 * k + 1];
    }
    Q /= zeta;
    S /= zeta;

    const double phase = zeta + std::numbers::pi / 4.0;
    const double sp = std::sin(phase), cp = std::cos(phase);
    const double q4 = std::pow(beta, 0.25);

    AiryPair out;
    out.method = AiryMethod::asymptotic_negative;
    out.ai = (sp * P - cp * Q) / (kSqrtPi * q4);
    out.ai_prime = -(q4 / kSqrtPi) * (cp * R + sp * S);
    out.bi = (cp * P + sp * Q) / (kSqrtPi * q4);
    out.bi_prime = (q4 / kSqrtPi) * (sp * R - cp * S);
    if (diag) {
        const int k = 2 * terms_per_sum;
        diag->err_estimate =
            (k < static_cast<int>(cd.c.size()) ? cd.c[k] : cd.c.back() * 8.0) *
            std::pow(zeta, -k);
    }
    return out;
}

// Exponential side: x >= kSeam.
AiryPair airy_positive_asymptotic(double x, AiryWant want, AiryDiag* diag) {
    const AsymptoticCoefficients& cd = asym_coeffs();
    const double zeta = (2.0 / 3.0) * x * std::sqrt(x);
    const int n = 2 * kAsymTermsPerSum;

    double sum_ai = 0.0, sum_aip = 0.0, sum_bi = 0.0, sum_bip = 0.0;
    for (int k = n - 1; k >= 0; --k) {
        const double iz = 1.0 / zeta;
        const double sg = (k % 2 == 0) ? 1.0 : -1.0;
        sum_ai = sum_ai * iz + sg * cd.c[k];
        sum_aip = sum_aip * iz + sg * cd.d[k];
        sum_bi = sum_bi * iz + cd.c[k];
        sum_bip = sum_bip * iz + cd.d[k];
    }

    const double q4 = std::pow(x, 0.25);
    AiryPair out;
    out.method = AiryMethod::asymptotic_positive;

    const double em = std::exp(-zeta);
    out.ai = em * sum_ai / (2.0 * kSqrtPi * q4);
    out.ai_prime = -q4 * em * sum_aip / (2.0 * kSqrtPi);

    const bool bi_requested = wants(want, AiryWant::Bi) || wants(want, AiryWant::BiPrime);
    if (zeta < 705.0) {
        const double ep = std::exp(zeta);
        out.bi = ep * sum_bi / (kSqrtPi * q4);
        out.bi_prime = q4 * ep * sum_bip / kSqrtPi;
    } else if (bi_requested) {
        throw std::overflow_error("airy: Bi(x) overflows for x = " + std::to_string(x));
    } else {
        out.bi = std::nan("");
        out.bi_prime = std::nan("");
    }
    if (diag) diag->err_estimate = cd.c.back() * 8.0 * std::pow(zeta, -n);
    return out;
}

} // namespace

AsymptoticCoefficients::AsymptoticCoefficients(int order_) : order(order_) {
    if (order < 1) throw std::invalid_argument("AsymptoticCoefficients: order >= 1");
    c.resize(order);
    d.resize(order);
    c[0] = 1.0;
    d[0] = 1.0;
    for (int k = 1; k < order; ++k) {
        const double j = k - 1.0;
        c[k] = c[k - 1] * (3.0 * j + 2.5) * (3.0 * j + 1.5) * (3.0 * j + 0.5) /
               (54.0 * (j + 1.0) * (j + 0.5));
        d[k] = -(6.0 * k + 1.0) / (6.0 * k - 1.0) * c[k];
    }
}

AiryPair airy(double x, AiryWant want, AiryDiag* diag) {
    if (!std::isfinite(x)) throw std::invalid_argument("airy: x must be finite");
    if (std::abs(x) <= kSeam) return airy_series(x, diag);
    if (x < 0.0) return airy_negative_asymptotic(-x, kAsymTermsPerSum, diag);
    return airy_positive_asymptotic(x, want, diag);
}

AiryNegAsymptotic airy_asymptotic_negative(double beta, int n_terms) {
    if (beta < 1.0)
        throw std::domain_error("airy_asymptotic_negative: requires beta >= 1");
    if (n_terms < 1)
        throw std::invalid_argument("airy_asymptotic_negative: n_terms >= 1");
    AsymptoticCoefficients cd(2 * n_terms);
    const double zeta = (2.0 / 3.0) * beta * std::sqrt(beta);
    double P = 0.0, Q = 0.0, R = 0.0, S = 0.0;
    const double inv_z2 = 1.0 / (zeta * zeta);
    for (int k = n_terms - 1; k >= 0; --k) {
        const double sg = (k % 2 == 0) ? 1.0 : -1.0;
        P = P * inv_z2 + sg * cd.c[2 * k];
        Q = Q * inv_z2 + sg * cd.c[2 * k + 1];
        R = R * inv_z2 + sg * cd.d[2 * k];
        S = S * inv_z2 + sg * cd.d[2 * k + 1];
    }
    Q /= zeta;
    S /= zeta;
    const double phase = zeta + std::numbers::pi / 4.0;
    const double q4 = std::pow(beta, 0.25);
    return {(std::sin(phase) * P - std::cos(phase) * Q) / (kSqrtPi * q4),
            -(q4 / kSqrtPi) * (std::cos(phase) * R + std::sin(phase) * S)};
}

double airy_zero_approx(int n, int order) {
    if (n < 1) throw std::invalid_argument("airy_zero_approx: n >= 1");
    if (order < 1 || order > 3) throw std::invalid_argument("airy_zero_approx: order in {1,2,3}");
    const double t = (3.0 / 8.0) * std::numbers::pi * (4.0 * n - 1.0);
    double series = 1.0;
    if (order >= 2) series += (5.0 / 48.0) / (t * t);
    if (order >= 3) series -= (5.0 / 36.0) / (t * t * t * t);
    return std::pow(t, 2.0 / 3.0) * series;
}

namespace {

double eval_for_zero(double beta, AiryZeroKind which) {
    AiryPair p = airy(-beta, AiryWant::ValuePair);
    return which == AiryZeroKind::Ai ? p.ai : p.ai_prime;
}

} // namespace

double airy_zero(int n, AiryZeroKind which) {
    if (n < 1) throw std::invalid_argument("airy_zero: n >= 1");
    // Phase seeds: zeros of Ai sit near T((3pi/8)(4n-1)), zeros of Ai' near
    // T((3pi/8)(4n-3)).
    double seed;
    if (which == AiryZeroKind::Ai) {
        seed = airy_zero_approx(n, n > 1 ? 3 : 2);
    } else {
        const double t = (3.0 / 8.0) * std::numbers::pi * (4.0 * n - 3.0);
        seed = std::pow(t, 2.0 / 3.0);
    }
    const double spacing = std::numbers::pi / std::sqrt(std::max(seed, 1.0));
    double step = 0.25 * spacing;

    double lo = std::max(seed - 0.75 * spacing, 1e-8);
    double hi = lo + step;
    double flo = eval_for_zero(lo, which);
    bool bracketed = false;
    for (int i = 0; i < 64; ++i) {
        double fhi = eval_for_zero(hi, which);
        if (flo == 0.0) return lo;
        if (flo * fhi <= 0.0) {
            bracketed = true;
            break;
        }
        lo = hi;
        flo = fhi;
        hi += step;
    }
    if (!bracketed) throw std::runtime_error("airy_zero: bracket not found");

    for (int i = 0; i < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++i) {
        double mid = 0.5 * (lo + hi);
        double fm = eval_for_zero(mid, which);
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

int airy_zero_count(double beta) {
    if (beta <= airy_zero(1, AiryZeroKind::Ai)) return 0;
    // Invert the phase seed to land within one or two zeros of the edge.
    const double zeta = (2.0 / 3.0) * beta * std::sqrt(beta);
    int n = std::max(1, static_cast<int>((8.0 * zeta / (3.0 * std::numbers::pi) + 1.0) / 4.0));
    while (n >= 1 && airy_zero(n, AiryZeroKind::Ai) > beta) --n;
    if (n == 0) return 0;
    while (airy_zero(n + 1, AiryZeroKind::Ai) <= beta) ++n;
    return n;
}

} // namespace stepwell::specfun
