#pragma once

// Command-line front end. run_cli is the whole program; tools/rotring.cpp
// only forwards main() to it so tests can drive it with string streams.
//
// Exit codes: 0 success, 1 I/O failure, 2 domain or usage error,
// 3 numerical failure or failed check, 4 model violation.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "rotring/energy.hpp"
#include "rotring/errors.hpp"
#include "rotring/params.hpp"
#include "rotring/rotation.hpp"
#include "rotring/spectrum.hpp"
#include "rotring/sweep.hpp"
#include "rotring/verify.hpp"
#include "rotring/version.hpp"

namespace rotring {

enum ExitCode : int { exit_ok = 0, exit_io = 1, exit_domain = 2, exit_numerical = 3, exit_model = 4 };

class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace cli {

inline constexpr const char* kToleranceEnv = "ROTRING_TOLERANCE";

struct Tolerance {
    double value;
    std::string source;
};

inline double parse_number(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    double v;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw domain_error(what + ": cannot parse '" + text + "'");
    }
    if (used != text.size()) throw domain_error(what + ": cannot parse '" + text + "'");
    return v;
}

// Accepts "inf" for the impenetrable-wall limit.
inline double parse_lambda(const std::string& text) {
    const double v = parse_number(text, "--lambda");
    if (std::isnan(v) || v < 0.0) throw domain_error("--lambda must be >= 0 or inf");
    return v;
}

// Flag beats environment beats default.
inline Tolerance resolve_tolerance(std::optional<double> flag, double fallback) {
    Tolerance t{fallback, "default"};
    if (flag) {
        t = {*flag, "flag"};
    } else if (const char* env = std::getenv(kToleranceEnv); env && *env) {
        t = {parse_number(env, kToleranceEnv), std::string("env ") + kToleranceEnv};
    }
    if (!(t.value > 0.0) || !std::isfinite(t.value)) throw domain_error("tolerance must be finite and > 0");
    return t;
}

inline std::string num(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return fmt::format("{:.15g}", v + 0.0);
}

inline std::string err(double v) { return fmt::format("{:.2e}", v); }

inline nlohmann::json jnum(double v) { return detail::json_number(v); }

// One "name = value unit +- error" line.
inline void line(std::ostream& os, const std::string& name, double value, const std::string& unit, double error) {
    os << fmt::format("{:<18} = {} {}  +- {}\n", name, num(value), unit, err(error));
}

struct SpectrumArgs {
    double beta = 0.0;
    std::string lambda;
    double alpha_max = 10.0;
    bool check = false;
    std::string format = "text";
};

struct EnergyArgs {
    double beta = 0.0;
    std::string lambda;
    double inertia = 0.0;
    std::string frame = "corotating";
    std::optional<double> tol;
    std::optional<double> radius, light_speed, hbar;
    std::string format = "text";
};

struct SweepArgs {
    std::string quantity = "izp";
    std::string beta_grid = "0:0.95:20";
    std::string lambda_list = "0.5,2,10,100,1e6";
    std::string out;
    std::string format = "csv";
    std::optional<double> tol;
    unsigned threads = 0;
};

struct VerifyArgs {
    std::string level = "fast";
};

struct TransformArgs {
    double ell = 0.0;
    std::string lambda;
    double inertia = 1.0;
    std::optional<double> tol;
    std::string format = "text";
};

// Error estimate of a computed root: the Newton correction for simple roots,
// the degeneracy tolerance for pairs.
inline double root_error(double alpha, bool degenerate, const ModelPoint& p) {
    if (p.dirichlet()) return 0.0;
    if (degenerate) return SpectrumOptions{}.degeneracy_tol * std::max(1.0, alpha);
    const double h = detail::reduced_secular(alpha, p), dh = detail::reduced_secular_derivative(alpha, p);
    const double newton = dh != 0.0 ? std::abs(h / dh) : 0.0;
    return std::max(newton, std::numeric_limits<double>::epsilon() * alpha);
}

inline int cmd_spectrum(const SpectrumArgs& a, std::ostream& out) {
    const ModelPoint p = make_point(a.beta, parse_lambda(a.lambda));
    const auto s = mode_frequencies(p, a.alpha_max);

    struct Diag {
        ModeResiduals r;
        double norm_defect = 0.0;
        double off_diagonal = 0.0;
        bool passed = false;
    };
    std::vector<Diag> diags;
    bool all_pass = true;
    if (a.check) {
        const auto modes = spectrum_modes(s);
        diags.resize(modes.size());
        for (std::size_t i = 0; i < modes.size(); ++i) {
            diags[i].r = mode_residuals(modes[i]);
            for (std::size_t j = 0; j < modes.size(); ++j) {
                const auto [first, second] = inner_products(modes[i], modes[j]);
                if (i == j)
                    diags[i].norm_defect = std::abs(first - 1.0);
                else
                    diags[i].off_diagonal = std::max(diags[i].off_diagonal, std::abs(first));
                diags[i].off_diagonal = std::max(diags[i].off_diagonal, std::abs(second));
            }
            diags[i].passed = diags[i].r.passes(1e-8, 1e-6) && diags[i].norm_defect <= 1e-6 &&
                              diags[i].off_diagonal <= 1e-6;
            all_pass = all_pass && diags[i].passed;
        }
    }

    if (a.format == "json") {
        nlohmann::json j;
        j["version"] = kVersion;
        j["beta"] = p.beta;
        j["lambda_hat"] = jnum(p.lambda_hat);
        j["alpha_max"] = a.alpha_max;
        j["units"] = "c/R";
        j["modes"] = nlohmann::json::array();
        for (std::size_t k = 0; k < s.alphas.size(); ++k) {
            nlohmann::json m = {{"alpha", s.alphas[k]},
                                {"error_estimate", root_error(s.alphas[k], s.degenerate[k], p)},
                                {"degenerate", static_cast<bool>(s.degenerate[k])}};
            if (a.check) {
                const auto& d = diags[k];
                m["check"] = {{"ode", d.r.ode},
                              {"periodicity", d.r.periodicity},
                              {"jump", d.r.jump},
                              {"normalization_defect", d.norm_defect},
                              {"off_diagonal", d.off_diagonal},
                              {"passed", d.passed}};
            }
            j["modes"].push_back(m);
        }
        out << j.dump(2) << "\n";
    } else {
        out << "# " << kVersion << " spectrum\n";
        out << "# beta = " << num(p.beta) << "  lambda_hat = " << num(p.lambda_hat)
            << "  alpha_max = " << num(a.alpha_max) << "\n";
        out << "# " << s.alphas.size() << " roots, frequency omega = alpha c/R\n";
        for (std::size_t k = 0; k < s.alphas.size(); ++k) {
            out << fmt::format("alpha[{}] = {} c/R  +- {}{}\n", k, num(s.alphas[k]),
                               err(root_error(s.alphas[k], s.degenerate[k], p)),
                               s.degenerate[k] ? "  degenerate" : "");
        }
        if (a.check) {
            out << "# residuals are dimensionless; required: ode 1e-8, boundary 1e-6, inner products 1e-6\n";
            for (std::size_t k = 0; k < diags.size(); ++k) {
                const auto& d = diags[k];
                out << fmt::format("check[{}] ode = {}  periodicity = {}  jump = {}  |norm - 1| = {}  "
                                   "off-diagonal = {}  {}\n",
                                   k, err(d.r.ode), err(d.r.periodicity), err(d.r.jump), err(d.norm_defect),
                                   err(d.off_diagonal), d.passed ? "pass" : "FAIL");
            }
        }
    }
    return all_pass ? exit_ok : exit_numerical;
}

inline int cmd_energy(const EnergyArgs& a, std::ostream& out) {
    if (a.frame != "corotating" && a.frame != "stationary")
        throw domain_error("--frame must be corotating or stationary");
    const Tolerance tol = resolve_tolerance(a.tol, 1e-8);
    const ModelPoint p = make_point(a.beta, parse_lambda(a.lambda));
    const auto e = corotating_total_energy(p, a.inertia, tol.value);
    const auto ell = total_angular_momentum(p, a.inertia, tol.value);
    const bool stationary = a.frame == "stationary";
    const double es = e.total + ell.value * p.beta;
    const double es_err = e.quadrature_error + std::abs(p.beta) * ell.error;

    std::optional<RingConfig> config;
    if (a.radius || a.light_speed || a.hbar)
        config = make_config(a.radius.value_or(1.0), a.light_speed.value_or(1.0), a.hbar.value_or(1.0), 0.0, 0.0);

    struct Row {
        std::string name;
        double value, error;
        Quantity kind;
    };
    std::vector<Row> rows = {{"field_energy", e.field_energy, e.quadrature_error, Quantity::energy},
                             {"classical_term", e.classical_term, 0.0, Quantity::energy},
                             {"total", e.total, e.quadrature_error, Quantity::energy},
                             {"ell_zp", ell.value - a.inertia * p.beta, ell.error, Quantity::angular_momentum},
                             {"ell_total", ell.value, ell.error, Quantity::angular_momentum}};
    if (stationary) rows.push_back({"stationary_energy", es, es_err, Quantity::energy});

    if (a.format == "json") {
        nlohmann::json j;
        j["version"] = kVersion;
        j["beta"] = p.beta;
        j["lambda_hat"] = jnum(p.lambda_hat);
        j["inertia_hat"] = a.inertia;
        j["frame"] = a.frame;
        j["tolerance"] = {{"value", tol.value}, {"source", tol.source}};
        j["guard_clamps"] = e.guard_clamps;
        for (const auto& r : rows) {
            nlohmann::json v = {{"value", r.value}, {"error_estimate", r.error}, {"units", unit_label(r.kind)}};
            if (config) v["physical"] = to_physical(*config, r.value, r.kind);
            j[r.name] = v;
        }
        out << j.dump(2) << "\n";
        return exit_ok;
    }
    out << "# " << kVersion << " energy\n";
    out << "# beta = " << num(p.beta) << "  lambda_hat = " << num(p.lambda_hat) << "  inertia_hat = " << num(a.inertia)
        << "  frame = " << a.frame << "\n";
    out << "# tolerance = " << fmt::format("{:g}", tol.value) << " (" << tol.source << ")\n";
    if (e.guard_clamps) out << "# guard clamps = " << e.guard_clamps << "\n";
    for (const auto& r : rows) {
        line(out, r.name, r.value, unit_label(r.kind), r.error);
        if (config)
            line(out, "  physical", to_physical(*config, r.value, r.kind), "(units of the given R, c, hbar)",
                 to_physical(*config, r.error, r.kind));
    }
    return exit_ok;
}

inline int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream& errs) {
    if (a.format != "csv" && a.format != "json") throw domain_error("--format must be csv or json");
    const Tolerance tol = resolve_tolerance(a.tol, 1e-6);
    Provenance prov;
    prov.tolerance = tol.value;
    prov.tolerance_source = tol.source;
    const auto table =
        run_sweep(parse_sweep_quantity(a.quantity), parse_grid(a.beta_grid), parse_grid(a.lambda_list), prov, a.threads);

    std::ofstream file;
    std::ostream* os = &out;
    if (!a.out.empty()) {
        file.open(a.out, std::ios::binary);
        if (!file) throw io_error("cannot open '" + a.out + "' for writing");
        os = &file;
    }
    if (a.format == "json")
        *os << to_json(table).dump(2) << "\n";
    else
        write_csv(*os, table);
    if (file.is_open()) {
        file.close();
        if (!file) throw io_error("write to '" + a.out + "' failed");
    }

    const auto degraded = table.count(RowStatus::degraded), failed = table.count(RowStatus::failed);
    if (degraded) errs << "warning: " << degraded << " degraded rows\n";
    if (failed) {
        errs << "error: " << failed << " rows failed\n";
        return exit_numerical;
    }
    return exit_ok;
}

inline int cmd_verify(const VerifyArgs& a, std::ostream& out) {
    if (a.level != "fast" && a.level != "full") throw domain_error("--level must be fast or full");
    const auto checks = run_verification(a.level == "full" ? VerifyLevel::full : VerifyLevel::fast);
    std::size_t failed = 0;
    for (const auto& c : checks) {
        out << fmt::format("[{}] {}: measured {:.3e}, required {} {:.3e}\n", c.passed ? "PASS" : "FAIL", c.name,
                           c.measured, c.at_least ? ">=" : "<=", c.required);
        failed += !c.passed;
    }
    out << checks.size() - failed << "/" << checks.size() << " checks passed\n";
    return failed ? exit_numerical : exit_ok;
}

inline int cmd_transform(const TransformArgs& a, std::ostream& out) {
    const Tolerance tol = resolve_tolerance(a.tol, 1e-8);
    const double lambda_hat = parse_lambda(a.lambda);
    const double beta = omega_of_ell(a.ell, lambda_hat, a.inertia, std::min(tol.value, 1e-12));
    const ModelPoint p = make_point(beta, lambda_hat);
    const auto ec = corotating_total_energy(p, a.inertia, tol.value);
    const auto es = stationary_energy(p, a.inertia, tol.value);
    const auto report = ground_state_report(lambda_hat, a.inertia, default_beta_grid(), tol.value);

    if (a.format == "json") {
        nlohmann::json j;
        j["version"] = kVersion;
        j["ell_total"] = a.ell;
        j["lambda_hat"] = jnum(lambda_hat);
        j["inertia_hat"] = a.inertia;
        j["tolerance"] = {{"value", tol.value}, {"source", tol.source}};
        j["beta"] = beta;
        j["corotating_energy"] = {{"value", ec.total}, {"error_estimate", ec.quadrature_error}, {"units", "hbar*c/R"}};
        j["stationary_energy"] = {{"value", es.value}, {"error_estimate", es.error}, {"units", "hbar*c/R"}};
        j["ground_state"] = {{"status", to_string(report.status)},
                             {"min_inertia_total", report.min_inertia_total},
                             {"argmin_beta", report.argmin_beta},
                             {"ell_zp_bound", report.ell_zp_bound},
                             {"response_lower_bound", report.response_lower_bound}};
        out << j.dump(2) << "\n";
    } else {
        out << "# " << kVersion << " transform\n";
        out << "# ell_total = " << num(a.ell) << " hbar  lambda_hat = " << num(lambda_hat)
            << "  inertia_hat = " << num(a.inertia) << "\n";
        out << "# tolerance = " << fmt::format("{:g}", tol.value) << " (" << tol.source << ")\n";
        line(out, "beta", beta, "(Omega R/c)", std::max(1e-12, 4.0 * std::numeric_limits<double>::epsilon()));
        line(out, "corotating_energy", ec.total, "hbar*c/R", ec.quadrature_error);
        line(out, "stationary_energy", es.value, "hbar*c/R", es.error);
        out << "ground_state       = " << to_string(report.status) << "\n";
        line(out, "min_inertia_total", report.min_inertia_total, "hbar*R/c", tol.value);
        line(out, "ell_zp_bound", report.ell_zp_bound, "hbar", 1e-12);
        line(out, "response_bound", report.response_lower_bound, "(dimensionless)", 1e-12);
    }
    return report.status == GroundState::semiclassical_violation ? exit_model : exit_ok;
}

}  // namespace cli

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Zero-point rotation of a quantum field on a ring with a delta barrier", "rotring"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    cli::SpectrumArgs sp;
    auto* spectrum = app.add_subcommand("spectrum", "roots of the secular equation");
    spectrum->add_option("--beta", sp.beta, "rim speed Omega R/c")->required();
    spectrum->add_option("--lambda", sp.lambda, "coupling lambda R^2/c^2, or inf")->required();
    spectrum->add_option("--alpha-max", sp.alpha_max, "largest root")->capture_default_str();
    spectrum->add_flag("--check", sp.check, "verify mode residuals and inner products");
    spectrum->add_option("--format", sp.format)->check(CLI::IsMember({"text", "json"}));

    cli::EnergyArgs en;
    auto* energy = app.add_subcommand("energy", "Casimir energy and angular momentum at one point");
    energy->add_option("--beta", en.beta)->required();
    energy->add_option("--lambda", en.lambda)->required();
    energy->add_option("--inertia", en.inertia, "classical inertia I c/(hbar R)");
    energy->add_option("--frame", en.frame)->check(CLI::IsMember({"corotating", "stationary"}));
    energy->add_option("--tol", en.tol);
    energy->add_option("--radius", en.radius, "R, for output in physical units");
    energy->add_option("--light-speed", en.light_speed);
    energy->add_option("--hbar", en.hbar);
    energy->add_option("--format", en.format)->check(CLI::IsMember({"text", "json"}));

    cli::SweepArgs sw;
    auto* sweep = app.add_subcommand("sweep", "tabulate a quantity over a (beta, lambda) grid");
    sweep->add_option("--quantity", sw.quantity)->check(CLI::IsMember({"izp", "ellzp", "energy"}));
    sweep->add_option("--beta-grid", sw.beta_grid, "start:stop:count or a comma list");
    sweep->add_option("--lambda-list", sw.lambda_list, "comma list, inf allowed");
    sweep->add_option("--out", sw.out, "output file (default stdout)");
    sweep->add_option("--format", sw.format)->check(CLI::IsMember({"csv", "json"}));
    sweep->add_option("--tol", sw.tol);
    sweep->add_option("--threads", sw.threads, "0 = hardware concurrency");

    cli::VerifyArgs ve;
    auto* verify = app.add_subcommand("verify", "run the invariant suites");
    verify->add_option("--level", ve.level)->check(CLI::IsMember({"fast", "full"}));

    cli::TransformArgs tr;
    auto* transform = app.add_subcommand("transform", "solve for beta at given total angular momentum");
    transform->add_option("--ell", tr.ell, "total angular momentum in units of hbar")->required();
    transform->add_option("--lambda", tr.lambda)->required();
    transform->add_option("--inertia", tr.inertia);
    transform->add_option("--tol", tr.tol);
    transform->add_option("--format", tr.format)->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_domain;
    }

    try {
        if (*spectrum) return cli::cmd_spectrum(sp, out);
        if (*energy) return cli::cmd_energy(en, out);
        if (*sweep) return cli::cmd_sweep(sw, out, err);
        if (*verify) return cli::cmd_verify(ve, out);
        if (*transform) return cli::cmd_transform(tr, out);
    } catch (const domain_error& e) {
        err << "domain error: " << e.what() << "\n";
        return exit_domain;
    } catch (const model_violation& e) {
        err << "model violation: " << e.what() << "\n";
        return exit_model;
    } catch (const io_error& e) {
        err << "I/O error: " << e.what() << "\n";
        return exit_io;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << "\n";
        return exit_numerical;
    }
    return exit_domain;
}

}  // namespace rotring
