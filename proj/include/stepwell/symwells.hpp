#pragma once

#include <vector>

namespace stepwell::symwells {

enum class Parity { even, odd };

struct WellLevel {
    int n = 0; // global ordinal, ground state = 0
    Parity parity = Parity::even;
    double beta = 0.0;
    double energy = 0.0;
    double C = 0.0; // normalization amplitude of the |x|-side branch
};

/// The confining well M|x|.  Even levels are the Ai' zeros, odd levels the
/// Ai zeros, merged by beta.
struct LinearWell {
    double M, m, hbar, alpha;
    static LinearWell make(double M, double m, double hbar);
};
std::vector<WellLevel> linear_well_levels(const LinearWell& well, int n_max);
double well_eigenfunction(const LinearWell& well, const WellLevel& level, double x);

/// The confining well kappa(e^{|x|/sigma} - 1).  Even levels are the
/// K'_{i sqrt(beta)}(alpha) zeros, odd levels the K zeros.
struct ExpWell {
    double kappa, sigma, m, hbar, alpha;
    static ExpWell make(double kappa, double sigma, double m, double hbar);
    static ExpWell from_alpha(double alpha); // hbar = m = 1, sigma = 1/(2 sqrt 2)
};
std::vector<WellLevel> exp_well_levels(const ExpWell& well, int n_max);
double well_eigenfunction(const ExpWell& well, const WellLevel& level, double x);

} // namespace stepwell::symwells
