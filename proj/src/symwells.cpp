#include "stepwell/symwells.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stepwell/airy.hpp"
#include "stepwell/bessel_k.hpp"
#include "stepwell/gauss.hpp"

namespace stepwell::symwells {

using specfun::airy;
using specfun::AiryWant;
using specfun::AiryZeroKind;

namespace {

// Merge the parity families by beta; interlacing makes the alternation
// automatic, but sorting keeps it correct regardless.
template <typename EvenFn, typename OddFn>
std::vector<WellLevel> merge_families(int n_max, EvenFn even_zero, OddFn odd_zero) {
    if (n_max < 1) throw std::invalid_argument("well levels: n_max >= 1");
    const int per_family = n_max / 2 + 2;
    std::vector<WellLevel> all;
    for (int i = 1; i <= per_family; ++i) {
        WellLevel lv;
        lv.parity = Parity::even;
        lv.beta = even_zero(i);
        all.push_back(lv);
        lv.parity = Parity::odd;
        lv.beta = odd_zero(i);
        all.push_back(lv);
    }
    std::sort(all.begin(), all.end(),
              [](const WellLevel& a, const WellLevel& b) { return a.beta < b.beta; });
    all.resize(n_max);
    for (int i = 0; i < n_max; ++i) all[i].n = i;
    return all;
}

} // namespace

LinearWell LinearWell::make(double M, double m, double hbar) {
    if (!(M > 0.0 && m > 0.0 && hbar > 0.0))
        throw std::invalid_argument("LinearWell: positive parameters required");
    return {M, m, hbar, std::cbrt(2.0 * m * M / (hbar * hbar))};
}

std::vector<WellLevel> linear_well_levels(const LinearWell& well, int n_max) {
    auto levels = merge_families(
        n_max, [](int i) { return specfun::airy_zero(i, AiryZeroKind::AiPrime); },
        [](int i) { return specfun::airy_zero(i, AiryZeroKind::Ai); });
    for (WellLevel& lv : levels) {
        lv.energy = well.M * lv.beta / well.alpha;
        auto ai2 = [](double u) {
            const double v = airy(u, AiryWant::Ai).ai;
            return v * v;
        };
        const int base_panels = std::max(16, static_cast<int>((lv.beta + 30.0) * 0.8));
        const double n2 = 2.0 / well.alpha *
                          integrate_adaptive(ai2, -lv.beta, 30.0, 1e-10, 1e-14, 16,
                                             base_panels);
        lv.C = 1.0 / std::sqrt(n2);
    }
    return levels;
}

double well_eigenfunction(const LinearWell& well, const WellLevel& level, double x) {
    const double branch = airy(well.alpha * std::abs(x) - level.beta, AiryWant::Ai).ai;
    if (level.parity == Parity::even) return level.C * branch;
    return (x == 0.0) ? 0.0 : std::copysign(level.C * branch, x);
}

ExpWell ExpWell::make(double kappa, double sigma, double m, double hbar) {
    if (!(kappa > 0.0 && sigma > 0.0 && m > 0.0 && hbar > 0.0))
        throw std::invalid_argument("ExpWell: positive parameters required");
    return {kappa, sigma, m, hbar,
            std::sqrt(8.0 * m * kappa * sigma * sigma / (hbar * hbar))};
}

ExpWell ExpWell::from_alpha(double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("ExpWell: alpha > 0");
    const double sigma = 1.0 / (2.0 * std::sqrt(2.0));
    return {alpha * alpha, sigma, 1.0, 1.0, alpha};
}

std::vector<WellLevel> exp_well_levels(const ExpWell& well, int n_max) {
    auto levels = merge_families(
        n_max,
        [&](int i) { return specfun::bessel_k_zero(i, well.alpha, specfun::KZeroKind::KPrime); },
        [&](int i) { return specfun::bessel_k_zero(i, well.alpha, specfun::KZeroKind::K); });
    for (WellLevel& lv : levels) {
        lv.energy = lv.beta * well.hbar * well.hbar / (8.0 * well.m * well.sigma * well.sigma) -
                    well.kappa;
        const double s = std::sqrt(lv.beta);
        const double z_max = std::max(well.alpha, s) + 45.0;
        auto integrand = [&](double z) {
            const double v = specfun::bessel_k_imag(s, z);
            return v * v / z;
        };
        const int base_panels = std::max(32, static_cast<int>((z_max - well.alpha) * 2.0));
        const double n2 = 2.0 * (2.0 * well.sigma) *
                          integrate_adaptive(integrand, well.alpha, z_max, 1e-9, 1e-16,
                                             16, base_panels);
        lv.C = 1.0 / std::sqrt(n2);
    }
    return levels;
}

double well_eigenfunction(const ExpWell& well, const WellLevel& level, double x) {
    const double z = well.alpha * std::exp(std::abs(x) / (2.0 * well.sigma));
    specfun::KStatus status;
    const double v = specfun::bessel_k_imag(std::sqrt(level.beta), z, &status);
    const double branch = status.underflow ? 0.0 : v;
    if (level.parity == Parity::even) return level.C * branch;
    return (x == 0.0) ? 0.0 : std::copysign(level.C * branch, x);
}

} // namespace stepwell::symwells
