#include "stepwell/wavepacket.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "stepwell/airy.hpp"
#include "stepwell/bessel_k.hpp"
#include "stepwell/gauss.hpp"
#include "stepwell/kernels.hpp"

namespace stepwell::wavepacket {

namespace {

using cplx = std::complex<double>;

// Uniform view of the three continuum models the packet integrates over.
struct Continuum {
    double m = 1.0, hbar = 1.0;
    std::vector<double> k, w, amp, gamma, omega, delta;
    std::vector<cplx> Pi;
    // left-branch radial factor, real; zero for the hard wall
    std::function<double(double /*k*/, std::size_t /*k index*/, double /*x*/)> left_wave;
    bool has_left = false;
};

Continuum build_continuum(const Potential& potential, const WavePacketSpec& spec) {
    Continuum c;
    const int n = spec.n_k;
    c.k.resize(n);
    c.w.resize(n);
    c.amp.resize(n);
    c.gamma.resize(n);
    c.omega.resize(n);
    c.delta.resize(n);
    c.Pi.resize(n);
    const double dk = (spec.k_max - spec.k_min) / (n - 1);
    for (int i = 0; i < n; ++i) {
        c.k[i] = spec.k_min + i * dk;
        c.w[i] = (i == 0 || i == n - 1) ? 0.5 * dk : dk; // trapezoid
        c.amp[i] = spec.amplitude(c.k[i]);
        c.gamma[i] = spec.gamma(c.k[i]);
    }

    if (const auto* lin = std::get_if<steplinear::StepLinearParams>(&potential)) {
        c.m = lin->m;
        c.hbar = lin->hbar;
        for (int i = 0; i < n; ++i) {
            const double k = c.k[i];
            const double beta = lin->beta0 + (k / lin->alpha) * (k / lin->alpha);
            const auto st = steplinear::scattering_state(*lin, beta);
            c.delta[i] = st.delta;
            c.Pi[i] = st.Pi;
            c.omega[i] = (lin->U0 + lin->hbar * lin->hbar * k * k / (2.0 * lin->m)) / lin->hbar;
        }
        const auto params = *lin;
        c.left_wave = [params](double k, std::size_t, double x) {
            const double beta = params.beta0 + (k / params.alpha) * (k / params.alpha);
            return specfun::airy(-params.alpha * x - beta, specfun::AiryWant::Ai).ai;
        };
        c.has_left = true;
    } else if (const auto* ex = std::get_if<stepexp::StepExpParams>(&potential)) {
        c.m = ex->m;
        c.hbar = ex->hbar;
        for (int i = 0; i < n; ++i) {
            const double k = c.k[i];
            const double skr = 2.0 * ex->sigma * k;
            const double beta = ex->beta0 + skr * skr;
            const auto st = stepexp::scattering_state(*ex, beta);
            c.delta[i] = st.delta;
            c.Pi[i] = st.Pi;
            c.omega[i] = (ex->U0 + ex->hbar * ex->hbar * k * k / (2.0 * ex->m)) / ex->hbar;
        }
        const auto params = *ex;
        c.left_wave = [params](double k, std::size_t, double x) {
            const double skr = 2.0 * params.sigma * k;
            const double beta = params.beta0 + skr * skr;
            const double z = params.alpha * std::exp(-x / (2.0 * params.sigma));
            specfun::KStatus status;
            const double v = specfun::bessel_k_imag(std::sqrt(beta), z, &status);
            return status.underflow ? 0.0 : v;
        };
        c.has_left = true;
    } else {
        const auto& hw = std::get<HardWall>(potential);
        c.m = hw.m;
        c.hbar = hw.hbar;
        for (int i = 0; i < n; ++i) {
            c.delta[i] = std::numbers::pi;
            c.Pi[i] = 0.0;
            c.omega[i] = (hw.U0 + hw.hbar * hw.hbar * c.k[i] * c.k[i] / (2.0 * hw.m)) / hw.hbar;
        }
        c.has_left = false;
    }
    return c;
}

double group_velocity(const Potential& potential, double k) {
    return std::visit([&](const auto& p) { return p.hbar * k / p.m; }, potential);
}

double predicted_delay(const Potential& potential, double k) {
    if (const auto* lin = std::get_if<steplinear::StepLinearParams>(&potential)) {
        const double beta = lin->beta0 + (k / lin->alpha) * (k / lin->alpha);
        return lin->tau_unit() * steplinear::delay(*lin, beta).tau;
    }
    if (const auto* ex = std::get_if<stepexp::StepExpParams>(&potential)) {
        const double skr = 2.0 * ex->sigma * k;
        const double beta = ex->beta0 + skr * skr;
        return ex->tau_unit() * stepexp::delay(*ex, beta).tau;
    }
    return 0.0;
}

double left_cut(const Potential& potential) {
    if (const auto* lin = std::get_if<steplinear::StepLinearParams>(&potential))
        return 2.0 / lin->alpha;
    if (const auto* ex = std::get_if<stepexp::StepExpParams>(&potential))
        return 2.0 * ex->sigma;
    return 0.5;
}

} // namespace

WavePacketSpec WavePacketSpec::make(double k_peak, double sigma_k, double x_start,
                                    int n_k) {
    if (!(k_peak > 0.0 && sigma_k > 0.0 && x_start > 0.0))
        throw std::invalid_argument("WavePacketSpec: positive k_peak, sigma_k, x_start");
    if (sigma_k > k_peak / 10.0)
        throw std::invalid_argument(
            "WavePacketSpec: sigma_k must be <= k_peak/10 (stationary phase)");
    WavePacketSpec spec;
    spec.k_peak = k_peak;
    spec.sigma_k = sigma_k;
    spec.x_start = x_start;
    const double span = 10.6 * sigma_k;
    spec.k_min = k_peak - span;
    spec.k_max = k_peak + span;
    if (spec.k_min <= 0.0)
        throw std::invalid_argument("WavePacketSpec: k grid would cross k = 0");
    const int n_min = static_cast<int>(std::ceil((spec.k_max - spec.k_min) / (sigma_k / 33.0)));
    spec.n_k = std::max(n_k, n_min) | 1; // odd keeps k_peak on the grid
    return spec;
}

double WavePacketSpec::amplitude(double k) const {
    const double d = k - k_peak;
    return std::pow(2.0 * std::numbers::pi * sigma_k * sigma_k, -0.25) *
           std::exp(-d * d / (4.0 * sigma_k * sigma_k));
}

double PacketField::norm_at(std::size_t it) const {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double a = std::norm(at(it, i));
        const double b = std::norm(at(it, i + 1));
        acc += 0.5 * (a + b) * (x[i + 1] - x[i]);
    }
    return acc;
}

PacketField evolve(const Potential& potential, const WavePacketSpec& spec,
                   const std::vector<double>& x_grid, const std::vector<double>& t_grid) {
    if (spec.n_k < 2) throw std::invalid_argument("evolve: packet spec has no k grid");
    const double dk = (spec.k_max - spec.k_min) / (spec.n_k - 1);
    if (dk > spec.sigma_k / 32.0)
        throw std::invalid_argument("evolve: k grid too coarse for sigma_k (need >= 32/sigma)");
    for (std::size_t i = 0; i + 1 < x_grid.size(); ++i) {
        if (x_grid[i + 1] - x_grid[i] > 1.0 / (8.0 * spec.k_max))
            throw std::invalid_argument("evolve: x grid too coarse (need dx < 1/(8 k_max))");
    }

    Continuum c = build_continuum(potential, spec);
    const int n = spec.n_k;
    const double inv_sqrt2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    const auto& kt = kernels::active();

    PacketField field;
    field.x = x_grid;
    field.t = t_grid;
    field.psi.assign(x_grid.size() * t_grid.size(), cplx{0.0, 0.0});

    // split x grid into left (x <= 0) and right columns
    std::vector<std::size_t> left_idx, right_idx;
    for (std::size_t j = 0; j < x_grid.size(); ++j)
        (x_grid[j] <= 0.0 ? left_idx : right_idx).push_back(j);
    if (!left_idx.empty() && !c.has_left)
        throw std::invalid_argument("evolve: hard wall has no x <= 0 region");

    // x <= 0: psi = sum_i w |c| Pi_i A_i(x) exp(i(gamma_i - Omega_i t))
    std::vector<std::vector<double>> m_re(left_idx.size()), m_im(left_idx.size());
    for (std::size_t jj = 0; jj < left_idx.size(); ++jj) {
        m_re[jj].resize(n);
        m_im[jj].resize(n);
        const double x = x_grid[left_idx[jj]];
        for (int i = 0; i < n; ++i) {
            const cplx m = c.w[i] * c.amp[i] * inv_sqrt2pi * c.Pi[i] *
                           c.left_wave(c.k[i], i, x);
            m_re[jj][i] = m.real();
            m_im[jj][i] = m.imag();
        }
    }

    std::vector<double> amp_w(n), base_refl(n), base_in(n), phase_left(n);
    for (int i = 0; i < n; ++i) amp_w[i] = c.w[i] * c.amp[i] * inv_sqrt2pi;

    for (std::size_t it = 0; it < t_grid.size(); ++it) {
        const double t = t_grid[it];
        for (int i = 0; i < n; ++i) {
            const double time_phase = c.gamma[i] - c.omega[i] * t;
            base_refl[i] = c.delta[i] + time_phase; // + k x
            base_in[i] = time_phase;                // - k x
            phase_left[i] = time_phase;
        }
        for (std::size_t j : right_idx) {
            const double x = x_grid[j];
            const cplx refl = kt.phase_sum(amp_w.data(), base_refl.data(), c.k.data(), x, n);
            const cplx in = kt.phase_sum(amp_w.data(), base_in.data(), c.k.data(), -x, n);
            field.psi[it * x_grid.size() + j] = refl + in;
        }
        for (std::size_t jj = 0; jj < left_idx.size(); ++jj) {
            field.psi[it * x_grid.size() + left_idx[jj]] =
                kt.rotate_sum(m_re[jj].data(), m_im[jj].data(), phase_left.data(), n);
        }
    }
    return field;
}

double measure_delay(PacketTrace& trace, double max_rel_residual) {
    const std::size_t n = trace.times.size();
    if (n < 3 || trace.centroid.size() != n)
        throw std::invalid_argument("measure_delay: trace too short");
    double st = 0.0, sx = 0.0, stt = 0.0, stx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        st += trace.times[i];
        sx += trace.centroid[i];
        stt += trace.times[i] * trace.times[i];
        stx += trace.times[i] * trace.centroid[i];
    }
    const double denom = n * stt - st * st;
    const double slope = (n * stx - st * sx) / denom;
    const double intercept = (sx * stt - st * stx) / denom;
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = trace.centroid[i] - (intercept + slope * trace.times[i]);
        ss += r * r;
    }
    const double x_range =
        *std::max_element(trace.centroid.begin(), trace.centroid.end()) -
        *std::min_element(trace.centroid.begin(), trace.centroid.end());
    trace.fit_slope = slope;
    trace.fit_intercept = intercept;
    trace.fit_residual = std::sqrt(ss / n) / std::max(x_range, 1e-300);
    trace.fitted = true;
    if (trace.fit_residual > max_rel_residual)
        throw std::runtime_error("measure_delay: centroid fit residual too large");
    // x = v (t - t0 - tau)  =>  tau = -intercept/slope - t0
    trace.tau_measured = -intercept / slope - trace.t0;
    return trace.tau_measured;
}

PacketTrace run_reflection(const Potential& potential, const WavePacketSpec& spec) {
    const double v = group_velocity(potential, spec.k_peak);
    const double t0 = spec.x_start / v;
    const double tau_guess = predicted_delay(potential, spec.k_peak);
    const double sigma_x0 = 0.5 / spec.sigma_k;
    const double x_cut = left_cut(potential);

    const double x_max = 3.2 * spec.x_start;
    const double hbar_over_m =
        std::visit([](const auto& p) { return p.hbar / p.m; }, potential);

    auto spread = [&](double t) {
        const double widen = hbar_over_m * t * spec.sigma_k;
        return std::sqrt(sigma_x0 * sigma_x0 + widen * widen);
    };

    // fit window: reflected packet fully inside [x_cut, x_max] with 4.5 sigma margin
    double t_start = t0 + tau_guess + (x_cut + 4.5 * spread(1.6 * t0)) / v;
    double t_end = t0 + tau_guess + (x_max - 4.5 * spread(2.8 * t0)) / v;
    for (int i = 0; i < 40; ++i) { // self-consistent margins
        t_start = t0 + tau_guess + (x_cut + 4.5 * spread(t_start)) / v;
        t_end = t0 + tau_guess + (x_max - 4.5 * spread(t_end)) / v;
    }
    if (!(t_end > t_start))
        throw std::runtime_error("run_reflection: no usable fit window; widen the packet");

    const double dx = std::min(1.0 / (8.5 * spec.k_max), sigma_x0 / 8.0);
    const int n_x = static_cast<int>(std::ceil((x_max - x_cut) / dx)) + 1;
    std::vector<double> x_grid(n_x);
    for (int i = 0; i < n_x; ++i)
        x_grid[i] = x_cut + (x_max - x_cut) * i / (n_x - 1.0);

    const int n_t = 25;
    std::vector<double> t_grid(n_t);
    for (int i = 0; i < n_t; ++i)
        t_grid[i] = t_start + (t_end - t_start) * i / (n_t - 1.0);

    PacketField field = evolve(potential, spec, x_grid, t_grid);

    PacketTrace trace;
    trace.times = t_grid;
    trace.t0 = t0;
    trace.k_peak = spec.k_peak;
    trace.group_velocity_expected = v;
    trace.tau_predicted = tau_guess;
    trace.centroid.resize(n_t);
    for (int it = 0; it < n_t; ++it) {
        double mass = 0.0, moment = 0.0;
        for (int j = 0; j + 1 < n_x; ++j) {
            const double a = std::norm(field.at(it, j));
            const double b = std::norm(field.at(it, j + 1));
            const double seg = 0.5 * (a + b) * (x_grid[j + 1] - x_grid[j]);
            mass += seg;
            moment += seg * 0.5 * (x_grid[j] + x_grid[j + 1]);
        }
        trace.centroid[it] = moment / mass;
    }
    measure_delay(trace);
    return trace;
}

} // namespace stepwell::wavepacket
