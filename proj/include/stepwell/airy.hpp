#pragma once

#include <vector>

namespace stepwell::specfun {

enum class AiryMethod { series, asymptotic_negative, asymptotic_positive, contour };

enum class AiryWant : unsigned {
    Ai = 1u,
    AiPrime = 2u,
    Bi = 4u,
    BiPrime = 8u,
    ValuePair = 3u,
    All = 15u,
};

constexpr AiryWant operator|(AiryWant a, AiryWant b) {
    return static_cast<AiryWant>(static_cast<unsigned>(a) | static_cast<unsigned>(b));
}
constexpr bool wants(AiryWant set, AiryWant item) {
    return (static_cast<unsigned>(set) & static_cast<unsigned>(item)) != 0;
}

struct AiryPair {
    double ai = 0.0;
    double ai_prime = 0.0;
    double bi = 0.0;
    double bi_prime = 0.0;
    AiryMethod method = AiryMethod::series;
};

struct AiryDiag {
    double err_estimate = 0.0; // relative, crude
};

/// Ai, Ai', Bi, Bi' at real x.  Members not covered by `want` may be NaN
/// when they are not representable (Bi past the overflow edge).  Throws
/// std::overflow_error if a requested member overflows and
/// std::invalid_argument for non-finite x.
AiryPair airy(double x, AiryWant want = AiryWant::All, AiryDiag* diag = nullptr);

/// Coefficient tables c_k and d_k of the large-|x| expansions,
/// d_k = -(6k+1)/(6k-1) c_k (so d_0 = 1).
struct AsymptoticCoefficients {
    std::vector<double> c;
    std::vector<double> d;
    int order;

    explicit AsymptoticCoefficients(int order_);
};

/// Truncated oscillatory expansion of Ai(-beta), Ai'(-beta) with n_terms
/// terms in each of the cosine and sine sums.  Requires beta >= 1.
struct AiryNegAsymptotic {
    double ai;
    double ai_prime;
};
AiryNegAsymptotic airy_asymptotic_negative(double beta, int n_terms);

enum class AiryZeroKind { Ai, AiPrime };

/// n-th positive root of Ai(-beta) = 0 (or Ai'(-beta) = 0), n >= 1,
/// refined to ~1e-12 absolute.
double airy_zero(int n, AiryZeroKind which);

/// Approximate n-th zero of Ai(-x) from the inverted phase expansion,
/// order in {1,2,3} selecting terms of the T(t) series.
double airy_zero_approx(int n, int order);

/// Count of Ai(-.) zeros <= beta (exact; O(1) zero evaluations).
int airy_zero_count(double beta);

} // namespace stepwell::specfun
