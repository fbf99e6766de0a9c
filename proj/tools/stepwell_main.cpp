// stepwell: spectra, phase shifts, delays, resonances, symmetric-well levels
// and wave-packet bounces for the step-linear and step-exponential
// potentials.  Emits CSV (17 significant digits, '#' metadata line first) or
// JSON.  Exit codes: 0 ok, 2 configuration error, 3 numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "stepwell/airy.hpp"
#include "stepwell/bessel_k.hpp"
#include "stepwell/contour.hpp"
#include "stepwell/lambert.hpp"
#include "stepwell/numerov.hpp"
#include "stepwell/stepexp.hpp"
#include "stepwell/steplinear.hpp"
#include "stepwell/symwells.hpp"
#include "stepwell/wavepacket.hpp"

namespace {

using json = nlohmann::json;
using stepwell::stepexp::StepExpParams;
using stepwell::steplinear::StepLinearParams;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Sweep {
    double min = 0.0;
    double max = 0.0;
    int samples = 0;
};

Sweep parse_sweep(const std::string& text) {
    Sweep s;
    char colon1 = 0, colon2 = 0;
    std::istringstream is(text);
    if (!(is >> s.min >> colon1 >> s.max >> colon2 >> s.samples) || colon1 != ':' ||
        colon2 != ':' || !(s.min < s.max) || s.samples < 2)
        throw CLI::ValidationError("--sweep", "expected min:max:samples with min < max, samples >= 2");
    return s;
}

struct Output {
    std::ofstream file;
    std::ostream* os = &std::cout;
    void open(const std::string& path) {
        if (path.empty()) return;
        file.open(path);
        if (!file) throw std::runtime_error("cannot open output file: " + path);
        os = &file;
    }
};

using MetaMap = std::map<std::string, std::string>;

void write_meta_csv(std::ostream& os, const std::string& cmd, const MetaMap& meta) {
    os << "# stepwell " << cmd;
    for (const auto& [k, v] : meta) os << ' ' << k << '=' << v;
    os << '\n';
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows; // "" renders as empty / null
};

void emit(Output& out, const std::string& cmd, const MetaMap& meta, const Table& table,
          const std::string& format) {
    std::ostream& os = *out.os;
    if (format == "json") {
        json doc;
        doc["meta"] = meta;
        doc["command"] = cmd;
        json rows = json::array();
        for (const auto& r : table.rows) {
            json obj;
            for (std::size_t i = 0; i < table.columns.size(); ++i) {
                if (r[i].empty()) {
                    obj[table.columns[i]] = nullptr;
                } else {
                    try {
                        obj[table.columns[i]] = std::stod(r[i]);
                    } catch (...) {
                        obj[table.columns[i]] = r[i];
                    }
                }
            }
            rows.push_back(obj);
        }
        doc["rows"] = rows;
        os << doc.dump() << '\n';
        return;
    }
    write_meta_csv(os, cmd, meta);
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        os << table.columns[i] << (i + 1 < table.columns.size() ? "," : "\n");
    for (const auto& r : table.rows) {
        for (std::size_t i = 0; i < r.size(); ++i)
            os << r[i] << (i + 1 < r.size() ? "," : "\n");
    }
}

// ---- parameter resolution -------------------------------------------------

struct CommonOpts {
    std::string potential; // lin | exp
    double beta0 = 0.0;
    bool has_beta0 = false;
    double alpha = 0.0;
    bool has_alpha = false;
    double M = 0.0, kappa = 0.0, sigma = 0.0, U0 = 0.0;
    bool has_M = false, has_kappa = false, has_sigma = false, has_U0 = false;
    double mass = 1.0, hbar = 1.0;
    std::string out_path;
    std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_potential = true) {
    if (needs_potential)
        cmd->add_option("potential", o.potential, "potential kind")
            ->required()
            ->check(CLI::IsMember({"lin", "exp"}));
    cmd->add_option("--beta0", o.beta0, "dimensionless step height")
        ->each([&o](const std::string&) { o.has_beta0 = true; });
    cmd->add_option("--alpha", o.alpha, "dimensionless alpha (exp potential)")
        ->each([&o](const std::string&) { o.has_alpha = true; });
    cmd->add_option("--M", o.M, "linear slope (physical)")
        ->each([&o](const std::string&) { o.has_M = true; });
    cmd->add_option("--kappa", o.kappa, "exponential energy scale (physical)")
        ->each([&o](const std::string&) { o.has_kappa = true; });
    cmd->add_option("--sigma", o.sigma, "exponential length scale (physical)")
        ->each([&o](const std::string&) { o.has_sigma = true; });
    cmd->add_option("--U0", o.U0, "step height (physical)")
        ->each([&o](const std::string&) { o.has_U0 = true; });
    cmd->add_option("--mass", o.mass, "particle mass (default 1)");
    cmd->add_option("--hbar", o.hbar, "hbar (default 1)");
    cmd->add_option("--out", o.out_path, "output path (default stdout)");
    cmd->add_option("--format", o.format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
}

struct Resolved {
    std::variant<StepLinearParams, StepExpParams> params;
    MetaMap meta;
};

Resolved resolve_params(const CommonOpts& o) {
    const bool physical = o.has_M || o.has_kappa || o.has_sigma || o.has_U0;
    if (physical && o.has_beta0)
        throw CLI::ValidationError("params", "give either --beta0 [--alpha] or physical parameters, not both");
    Resolved r;
    if (o.potential == "lin") {
        StepLinearParams p = physical
            ? StepLinearParams::from_physical(o.has_M ? o.M : 1.0,
                                              o.has_U0 ? o.U0 : 1.0, o.mass, o.hbar)
            : StepLinearParams::from_beta0(o.has_beta0 ? o.beta0 : 6.0);
        r.meta["potential"] = "lin";
        r.meta["M"] = fmt17(p.M);
        r.meta["U0"] = fmt17(p.U0);
        r.meta["m"] = fmt17(p.m);
        r.meta["hbar"] = fmt17(p.hbar);
        r.meta["alpha"] = fmt17(p.alpha);
        r.meta["beta0"] = fmt17(p.beta0);
        r.params = p;
    } else {
        const double alpha = o.has_alpha ? o.alpha : 1.0;
        StepExpParams p = physical
            ? StepExpParams::from_physical(o.has_kappa ? o.kappa : 1.0,
                                           o.has_sigma ? o.sigma : 1.0,
                                           o.has_U0 ? o.U0 : 1.0, o.mass, o.hbar)
            : StepExpParams::from_dimensionless(o.has_beta0 ? o.beta0 : 24.0, alpha);
        r.meta["potential"] = "exp";
        r.meta["kappa"] = fmt17(p.kappa);
        r.meta["sigma"] = fmt17(p.sigma);
        r.meta["U0"] = fmt17(p.U0);
        r.meta["m"] = fmt17(p.m);
        r.meta["hbar"] = fmt17(p.hbar);
        r.meta["alpha"] = fmt17(p.alpha);
        r.meta["beta0"] = fmt17(p.beta0);
        if (!o.has_alpha && !physical) r.meta["alpha_defaulted"] = "true";
    }
    if (!physical) {
        r.meta["parameter_source"] = "dimensionless";
    } else {
        r.meta["parameter_source"] = "physical";
        if (!o.has_M && !o.has_kappa) r.meta["defaults"] = "partial-physical";
    }
    return r;
}

// ---- subcommand bodies -----------------------------------------------------

int cmd_spectrum(const CommonOpts& o, bool curves, int max_n) {
    Resolved r = resolve_params(o);
    Output out;
    out.open(o.out_path);
    Table t;
    if (curves) {
        // graphical construction: lhs = ratio, rhs = sqrt(beta0-beta)(/alpha)
        t.columns = {"beta", "lhs", "rhs"};
        const int n = 800;
        if (const auto* lin = std::get_if<StepLinearParams>(&r.params)) {
            for (int i = 1; i < n; ++i) {
                const double b = lin->beta0 * i / n;
                const auto a = stepwell::specfun::airy(-b);
                t.rows.push_back({fmt17(b), fmt17(a.ai_prime / a.ai),
                                  fmt17(std::sqrt(lin->beta0 - b))});
            }
        } else {
            const auto& ex = std::get<StepExpParams>(r.params);
            const double lo = ex.alpha * ex.alpha;
            for (int i = 1; i < n; ++i) {
                const double b = lo + (ex.beta0 - lo) * i / n;
                const auto kb = stepwell::specfun::bessel_k_imag_bundle(b, ex.alpha);
                t.rows.push_back({fmt17(b), fmt17(kb.k_dx / kb.k),
                                  fmt17(std::sqrt(ex.beta0 - b) / ex.alpha)});
            }
        }
        emit(out, "spectrum", r.meta, t, o.format);
        return 0;
    }
    t.columns = {"n", "beta", "energy"};
    if (const auto* lin = std::get_if<StepLinearParams>(&r.params)) {
        for (const auto& s : stepwell::steplinear::bound_states(*lin, max_n))
            t.rows.push_back({std::to_string(s.n), fmt17(s.beta), fmt17(s.energy)});
    } else {
        const auto& ex = std::get<StepExpParams>(r.params);
        for (const auto& s : stepwell::stepexp::bound_states(ex, max_n))
            t.rows.push_back({std::to_string(s.n), fmt17(s.beta), fmt17(s.energy)});
    }
    emit(out, "spectrum", r.meta, t, o.format);
    return 0;
}

int cmd_delay(const CommonOpts& o, const std::string& sweep_text) {
    Resolved r = resolve_params(o);
    const Sweep sw = parse_sweep(sweep_text);
    r.meta["sweep"] = sweep_text;
    Output out;
    out.open(o.out_path);
    Table t;
    t.columns = {"beta", "tau", "tau_classical", "flag"};
    for (int i = 0; i < sw.samples; ++i) {
        const double b = sw.min + (sw.max - sw.min) * i / (sw.samples - 1.0);
        const double beta0 = std::visit([](const auto& p) { return p.beta0; }, r.params);
        if (b <= beta0 + 1e-8) {
            t.rows.push_back({fmt17(b), "", "", "threshold"});
            continue;
        }
        if (const auto* lin = std::get_if<StepLinearParams>(&r.params)) {
            const auto d = stepwell::steplinear::delay(*lin, b);
            t.rows.push_back({fmt17(b), fmt17(d.tau), fmt17(d.tau_classical), "ok"});
        } else {
            const auto d = stepwell::stepexp::delay(std::get<StepExpParams>(r.params), b);
            t.rows.push_back({fmt17(b), fmt17(d.tau), fmt17(d.tau_classical), "ok"});
        }
    }
    emit(out, "delay", r.meta, t, o.format);
    return 0;
}

int cmd_resonances(const CommonOpts& o, double beta_max) {
    Resolved r = resolve_params(o);
    if (!std::holds_alternative<StepLinearParams>(r.params))
        throw CLI::ValidationError("resonances", "only the lin potential is supported");
    r.meta["beta_max"] = fmt17(beta_max);
    Output out;
    out.open(o.out_path);
    Table t;
    t.columns = {"beta_center", "eta_n", "height", "width"};
    const auto res =
        stepwell::steplinear::resonances(std::get<StepLinearParams>(r.params), beta_max);
    for (const auto& x : res)
        t.rows.push_back({fmt17(x.beta_center), fmt17(x.eta_n), fmt17(x.height),
                          fmt17(x.width)});
    emit(out, "resonances", r.meta, t, o.format);
    return 0;
}

int cmd_wells(const CommonOpts& o, int n_levels) {
    MetaMap meta;
    Output out;
    out.open(o.out_path);
    Table t;
    t.columns = {"n", "parity", "beta", "energy"};
    std::vector<stepwell::symwells::WellLevel> levels;
    if (o.potential == "lin") {
        const auto well = stepwell::symwells::LinearWell::make(o.has_M ? o.M : 0.5,
                                                               o.mass, o.hbar);
        meta = {{"well", "lin"}, {"M", fmt17(well.M)}, {"m", fmt17(well.m)},
                {"hbar", fmt17(well.hbar)}, {"alpha", fmt17(well.alpha)}};
        levels = stepwell::symwells::linear_well_levels(well, n_levels);
    } else {
        stepwell::symwells::ExpWell well =
            (o.has_kappa || o.has_sigma)
                ? stepwell::symwells::ExpWell::make(o.has_kappa ? o.kappa : 1.0,
                                                    o.has_sigma ? o.sigma : 1.0, o.mass,
                                                    o.hbar)
                : stepwell::symwells::ExpWell::from_alpha(o.has_alpha ? o.alpha : 1.0);
        meta = {{"well", "exp"},          {"kappa", fmt17(well.kappa)},
                {"sigma", fmt17(well.sigma)}, {"m", fmt17(well.m)},
                {"hbar", fmt17(well.hbar)},   {"alpha", fmt17(well.alpha)}};
        levels = stepwell::symwells::exp_well_levels(well, n_levels);
    }
    for (const auto& lv : levels)
        t.rows.push_back({std::to_string(lv.n),
                          lv.parity == stepwell::symwells::Parity::even ? "even" : "odd",
                          fmt17(lv.beta), fmt17(lv.energy)});
    emit(out, "wells", meta, t, o.format);
    return 0;
}

int cmd_packet(const CommonOpts& o, double beta_peak, double sigma_frac, double x_start_u) {
    Resolved r = resolve_params(o);
    using stepwell::wavepacket::WavePacketSpec;
    stepwell::wavepacket::Potential pot;
    double k_peak = 0.0;
    double length_unit = 1.0;
    if (const auto* lin = std::get_if<StepLinearParams>(&r.params)) {
        if (beta_peak <= lin->beta0)
            throw CLI::ValidationError("--beta-peak", "must exceed beta0");
        k_peak = lin->alpha * std::sqrt(beta_peak - lin->beta0);
        length_unit = 1.0 / lin->alpha;
        pot = *lin;
    } else {
        const auto& ex = std::get<StepExpParams>(r.params);
        if (beta_peak <= ex.beta0)
            throw CLI::ValidationError("--beta-peak", "must exceed beta0");
        k_peak = std::sqrt(beta_peak - ex.beta0) / (2.0 * ex.sigma);
        length_unit = ex.sigma;
        pot = ex;
    }
    const double sigma_k = k_peak / sigma_frac;
    const double x_start = std::max(x_start_u * length_unit, 14.0 * 0.5 / sigma_k);
    const auto spec = WavePacketSpec::make(k_peak, sigma_k, x_start);
    auto trace = stepwell::wavepacket::run_reflection(pot, spec);

    r.meta["beta_peak"] = fmt17(beta_peak);
    r.meta["k_peak"] = fmt17(k_peak);
    r.meta["sigma_k"] = fmt17(sigma_k);
    r.meta["x_start"] = fmt17(x_start);
    Output out;
    out.open(o.out_path);
    Table t;
    t.columns = {"t", "x_centroid"};
    for (std::size_t i = 0; i < trace.times.size(); ++i)
        t.rows.push_back({fmt17(trace.times[i]), fmt17(trace.centroid[i])});
    emit(out, "packet", r.meta, t, o.format);

    json summary;
    summary["tau_measured"] = trace.tau_measured;
    summary["tau_predicted"] = trace.tau_predicted;
    summary["beta_peak"] = beta_peak;
    std::cout << summary.dump() << '\n';
    return 0;
}

int cmd_specfun(const std::string& fn, const std::string& sweep_text, double s_order,
                double x_fixed, const std::string& out_path, const std::string& format) {
    const Sweep sw = parse_sweep(sweep_text);
    Output out;
    out.open(out_path);
    MetaMap meta{{"fn", fn}, {"sweep", sweep_text}};
    Table t;
    t.columns = {"x", "value", "method", "err_estimate"};
    using namespace stepwell::specfun;
    for (int i = 0; i < sw.samples; ++i) {
        const double x = sw.min + (sw.max - sw.min) * i / (sw.samples - 1.0);
        double value = 0.0;
        std::string method;
        double err = 0.0;
        if (fn == "ai" || fn == "aiprime" || fn == "bi" || fn == "biprime") {
            AiryDiag diag;
            const AiryPair p = airy(x, AiryWant::All, &diag);
            value = fn == "ai" ? p.ai
                  : fn == "aiprime" ? p.ai_prime
                  : fn == "bi" ? p.bi : p.bi_prime;
            method = p.method == AiryMethod::series ? "series"
                   : p.method == AiryMethod::asymptotic_negative ? "asymptotic_negative"
                   : p.method == AiryMethod::asymptotic_positive ? "asymptotic_positive"
                   : "contour";
            err = diag.err_estimate;
        } else if (fn == "k") {
            value = bessel_k_imag(s_order, x);
            method = "quadrature";
            err = 1e-15 * std::exp(std::max(0.0, 1.5708 * s_order - x));
        } else if (fn == "kdx") {
            value = bessel_k_imag_dx(s_order, x);
            method = "quadrature";
            err = 1e-15 * std::exp(std::max(0.0, 1.5708 * s_order - x));
        } else if (fn == "kdbeta") {
            value = bessel_k_imag_dbeta(x, x_fixed);
            method = "quadrature";
            err = 1e-12;
        } else if (fn == "lambertw") {
            value = lambert_w(x);
            method = "halley";
            err = 1e-15;
        } else {
            throw CLI::ValidationError("--fn", "unknown function " + fn);
        }
        t.rows.push_back({fmt17(x), fmt17(value), method, fmt17(err)});
    }
    emit(out, "specfun", meta, t, format);
    return 0;
}

int cmd_validate(int n_levels, double alpha, const std::string& out_path,
                 const std::string& format) {
    using namespace stepwell;
    Output out;
    out.open(out_path);
    MetaMap meta{{"levels", std::to_string(n_levels)}, {"alpha", fmt17(alpha)}};
    Table t;
    t.columns = {"well", "n", "parity", "beta_analytic", "beta_numerov", "rel_err"};

    // linear well, dimensionless: u'' = (|y| - beta) u
    {
        const auto well = symwells::LinearWell::make(0.5, 1.0, 1.0); // alpha = 1
        auto levels = symwells::linear_well_levels(well, n_levels);
        const double beta_top = levels.back().beta;
        validate::NumerovProblem prob;
        prob.potential = [](double y) { return std::abs(y); };
        prob.x_left = -(beta_top + 18.0);
        prob.x_right = beta_top + 18.0;
        prob.n_points = 48000;
        prob.e_lo = 0.0;
        prob.e_hi = beta_top + 0.5;
        auto numerov = validate::numerov_eigenvalues(prob, n_levels);
        for (int i = 0; i < n_levels; ++i) {
            const double rel = std::abs(numerov[i] - levels[i].beta) / levels[i].beta;
            t.rows.push_back({"lin", std::to_string(i),
                              levels[i].parity == symwells::Parity::even ? "even" : "odd",
                              fmt17(levels[i].beta), fmt17(numerov[i]), fmt17(rel)});
        }
    }
    // exponential well: u'' = (alpha^2 e^{2|xi|} - beta) u, xi = x/(2 sigma)
    {
        const auto well = symwells::ExpWell::from_alpha(alpha);
        auto levels = symwells::exp_well_levels(well, n_levels);
        const double beta_top = levels.back().beta;
        const double xi_turn = 0.5 * std::log(beta_top / (alpha * alpha));
        validate::NumerovProblem prob;
        prob.potential = [alpha](double xi) {
            return alpha * alpha * std::exp(2.0 * std::abs(xi));
        };
        prob.x_left = -(xi_turn + 4.0);
        prob.x_right = xi_turn + 4.0;
        prob.n_points = 48000;
        prob.e_lo = alpha * alpha;
        prob.e_hi = beta_top + 1.0;
        auto numerov = validate::numerov_eigenvalues(prob, n_levels);
        for (int i = 0; i < n_levels; ++i) {
            const double rel = std::abs(numerov[i] - levels[i].beta) / levels[i].beta;
            t.rows.push_back({"exp", std::to_string(i),
                              levels[i].parity == symwells::Parity::even ? "even" : "odd",
                              fmt17(levels[i].beta), fmt17(numerov[i]), fmt17(rel)});
        }
    }
    emit(out, "validate", meta, t, format);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"step-linear and step-exponential potential solver"};
    app.require_subcommand(1);

    CommonOpts spectrum_opts, delay_opts, resonance_opts, wells_opts, packet_opts;
    bool curves = false;
    int spectrum_max_n = 10000;
    std::string delay_sweep;
    double beta_max = 15.0;
    int wells_n = 8;
    double beta_peak = 8.0, sigma_frac = 12.0, x_start_u = 30.0;

    auto* spectrum = app.add_subcommand("spectrum", "bound-state spectrum");
    add_common(spectrum, spectrum_opts);
    spectrum->add_flag("--curves", curves, "emit the graphical-construction curves");
    spectrum->add_option("--max-n", spectrum_max_n, "cap on the number of states");

    auto* delay = app.add_subcommand("delay", "Wigner delay sweep");
    add_common(delay, delay_opts);
    delay->add_option("--sweep", delay_sweep, "beta sweep min:max:samples")->required();

    auto* resonances = app.add_subcommand("resonances", "delay resonance peaks");
    add_common(resonances, resonance_opts);
    resonances->add_option("--beta-max", beta_max, "upper end of the search window");

    auto* wells = app.add_subcommand("wells", "symmetric confining well levels");
    add_common(wells, wells_opts);
    wells->add_option("--n", wells_n, "number of levels");

    auto* packet = app.add_subcommand("packet", "wave-packet bounce and delay");
    add_common(packet, packet_opts);
    packet->add_option("--beta-peak", beta_peak, "dimensionless packet peak energy")
        ->required();
    packet->add_option("--sigma-k-frac", sigma_frac, "sigma_k = k_peak / this (default 12)");
    packet->add_option("--x-start", x_start_u, "start position in potential length units");

    std::string sf_fn = "ai", sf_sweep, sf_out, sf_format = "csv";
    double sf_s = 0.0, sf_x = 1.0;
    auto* specfun = app.add_subcommand("specfun", "special-function table");
    specfun->add_option("--fn", sf_fn, "ai|aiprime|bi|biprime|k|kdx|kdbeta|lambertw");
    specfun->add_option("--sweep", sf_sweep, "argument sweep min:max:samples")->required();
    specfun->add_option("--s", sf_s, "order s for k/kdx");
    specfun->add_option("--x", sf_x, "fixed argument for kdbeta");
    specfun->add_option("--out", sf_out, "output path");
    specfun->add_option("--format", sf_format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));

    int val_levels = 5;
    double val_alpha = 1.0;
    std::string val_out, val_format = "csv";
    auto* validate = app.add_subcommand("validate", "Numerov oracle vs analytic spectra");
    validate->add_option("--levels", val_levels, "levels per well");
    validate->add_option("--alpha", val_alpha, "exp-well alpha");
    validate->add_option("--out", val_out, "output path");
    validate->add_option("--format", val_format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (spectrum->parsed()) return cmd_spectrum(spectrum_opts, curves, spectrum_max_n);
        if (delay->parsed()) return cmd_delay(delay_opts, delay_sweep);
        if (resonances->parsed()) return cmd_resonances(resonance_opts, beta_max);
        if (wells->parsed()) return cmd_wells(wells_opts, wells_n);
        if (packet->parsed())
            return cmd_packet(packet_opts, beta_peak, sigma_frac, x_start_u);
        if (specfun->parsed())
            return cmd_specfun(sf_fn, sf_sweep, sf_s, sf_x, sf_out, sf_format);
        if (validate->parsed())
            return cmd_validate(val_levels, val_alpha, val_out, val_format);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    }
    return 2;
}
