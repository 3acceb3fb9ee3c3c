#pragma once

#include "kstab/arith.hpp"
#include "kstab/az.hpp"
#include "kstab/catalog.hpp"
#include "kstab/invariants.hpp"
#include "kstab/json_io.hpp"
#include "kstab/scan.hpp"
#include "kstab/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace kstab::cli {

/** @brief Process exit codes. */
enum Exit : int { ok = 0, precondition = 1, io = 2, verify_failed = 3 };

/** @brief An input/output failure (unreadable or unwritable path). */
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** @brief Parsed command line shared by all subcommands. */
struct RunConfig {
    std::string subcommand;
    std::string case_id;
    std::string document;
    std::map<std::string, long> params;
    std::optional<std::string> a, b, c;
    std::string divisor;
    std::string center;
    std::string step = "1/20";
    std::string out;
    std::string svg;
    long cap = 10;
    int criterion = 0;
};

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline void write_file(const std::string& path, const std::string& text, std::ostream& out) {
    if (path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot write " + path);
    f << text;
    if (!f) throw IoError("write failed for " + path);
}

inline CatalogCase load_case(const RunConfig& cfg, std::ostream& err) {
    if (!cfg.document.empty()) {
        if (!cfg.case_id.empty()) throw DomainError("give either --case or --document, not both");
        auto lc = json_io::load_custom_text(read_file(cfg.document));
        for (const auto& w : lc.warnings) err << "warning: " << w << '\n';
        return lc.c;
    }
    if (cfg.case_id.empty()) throw DomainError("missing --case (or --document)");
    return instantiate(cfg.case_id, cfg.params);
}

inline Rat coefficient(const std::optional<std::string>& s, const char* name) {
    if (!s) throw DomainError(std::string("missing coefficient --") + name);
    Rat r;
    try {
        r = Rat::parse(*s);
    } catch (const std::exception&) {
        throw DomainError(std::string("coefficient --") + name + " must be an exact rational p or p/q, got \"" + *s + "\"");
    }
    if (r.sign() < 0 || r >= Rat(1)) throw DomainError(std::string("coefficient --") + name + " must lie in [0,1), got " + r.str());
    return r;
}

inline std::vector<Rat> coefficients(const RunConfig& cfg, const CatalogCase& c) {
    const std::optional<std::string>* given[] = {&cfg.a, &cfg.b, &cfg.c};
    const char* names[] = {"a", "b", "c"};
    std::vector<Rat> out;
    for (std::size_t i = 0; i < 3; ++i) {
        if (i < c.dim())
            out.push_back(coefficient(*given[i], names[i]));
        else if (*given[i])
            throw DomainError(c.id + " has " + std::to_string(c.dim()) + " boundary coefficients; --" + names[i] + " is not used");
    }
    return out;
}

inline Rat parse_step(const std::string& s) {
    Rat r;
    try {
        r = Rat::parse(s);
    } catch (const std::exception&) {
        throw DomainError("--step must be an exact rational, got \"" + s + "\"");
    }
    return r;
}

inline std::string params_text(const std::map<std::string, long>& p) {
    std::string s;
    for (const auto& [k, v] : p) s += (s.empty() ? "" : " ") + k + "=" + std::to_string(v);
    return s;
}

inline std::string point_text(const CatalogCase& c, const std::vector<Rat>& x) {
    static const char* names[] = {"a", "b", "c"};
    std::string s = c.id;
    if (!c.params.empty()) s += " " + params_text(c.params);
    for (std::size_t i = 0; i < x.size(); ++i) s += " " + std::string(names[i]) + "=" + x[i].str();
    return s;
}

}  // namespace detail

inline int cmd_list(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (!cfg.out.empty()) {
        // Export one case as a JSON document.
        auto c = detail::load_case(cfg, err);
        detail::write_file(cfg.out, json_io::export_case(c), out);
        return ok;
    }
    out << "id   eps   params            boundary                         K-semistable  variety\n";
    for (const auto& r : table_rows()) {
        if (!cfg.case_id.empty() && r.id != cfg.case_id) continue;
        std::string params, boundary;
        for (const auto& p : r.params) params += (params.empty() ? "" : ",") + p.name + ">=" + std::to_string(p.min);
        for (const auto& b : r.boundary_text) boundary += (boundary.empty() ? "" : " + ") + b;
        out << std::left << std::setw(5) << r.id << std::setw(6) << r.table_eps.str() << std::setw(18)
            << (params.empty() ? "-" : params) << std::setw(33) << boundary << std::setw(14) << ('"' + r.semistable_column + '"')
            << r.variety << '\n';
    }
    return ok;
}

inline int cmd_beta(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    auto c = detail::load_case(cfg, err);
    auto x = detail::coefficients(cfg, c);
    LogPair p = c.pair(x);
    if (!is_log_fano(p)) throw DomainError(detail::point_text(c, x) + " is outside the body of ample angles (-K-D not ample)");
    bool any = false;
    out << detail::point_text(c, x) << '\n';
    for (const auto& t : c.tests) {
        if (!cfg.divisor.empty() && t.label != cfg.divisor) continue;
        any = true;
        auto r = beta_prime(p, t.cls, t.label);
        out << t.label << ": A=" << r.A << " tau=" << r.tau << " eps=" << r.eps << " S'=" << r.S_prime << " L^3=" << r.L_cubed
            << " beta'=" << r.beta_prime << " (" << to_string(r.verdict) << ")\n";
    }
    if (!any) throw DomainError(c.id + " has no test divisor " + cfg.divisor);
    return ok;
}

inline int cmd_az(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    auto c = detail::load_case(cfg, err);
    auto x = detail::coefficients(cfg, c);
    if (c.centers.empty()) throw DomainError(c.id + " has no Abban-Zhuang center");
    LogPair p = c.pair(x);
    if (!is_log_fano(p)) throw DomainError(detail::point_text(c, x) + " is outside the body of ample angles (-K-D not ample)");
    out << detail::point_text(c, x) << '\n';
    bool any = false;
    for (const auto& z : c.centers) {
        if (!cfg.center.empty() && z.label != cfg.center) continue;
        any = true;
        auto rep = S_W_report(p, z);
        auto d = delta_Z_bound(p, z);
        out << z.label << " (Y=" << z.y_label << ", " << z.surface.name() << "): S(W;Z)=" << rep.value
            << " [negative part " << rep.negative_term << ", volume " << rep.volume_term << "] A_Z=" << z.A_Z(x)
            << " A/S(Y)=" << d.divisorial << " A/S(W;Z)=" << d.refined << " delta_Z>=" << d.bound << '\n';
    }
    if (!any) throw DomainError(c.id + " has no center " + cfg.center);
    out << "verdict: " << to_string(polystable_verdict(p, c.tests, c.centers)) << '\n';
    return ok;
}

inline int cmd_region(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    auto c = detail::load_case(cfg, err);
    if (cfg.out.empty()) throw DomainError("region needs --out (CSV path, or - for standard output)");
    auto s = scan(c, detail::parse_step(cfg.step));
    detail::write_file(cfg.out, to_csv(s), out);
    if (!cfg.svg.empty()) {
        std::function<bool(const Rat&, const Rat&)> reg;
        if (!c.known_region.empty() && c.dim() == 2) reg = regions::by_name(c.known_region);
        detail::write_file(cfg.svg, to_svg(s, reg), out);
    }
    return ok;
}

inline int cmd_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    auto c = detail::load_case(cfg, err);
    auto s = scan(c, detail::parse_step(cfg.step));
    out << c.id << (c.params.empty() ? "" : " " + detail::params_text(c.params)) << " step " << s.grid_step << ": "
        << s.points.size() << " points\n";
    for (auto st : {PointStatus::not_log_fano, PointStatus::unstable, PointStatus::undecided, PointStatus::semistable_certified,
                    PointStatus::polystable_certified})
        out << "  " << std::left << std::setw(22) << to_string(st) << s.count(st) << '\n';
    if (!c.known_region.empty() && c.dim() == 2) {
        auto d = compare_region(s, regions::by_name(c.known_region));
        out << "known region (" << regions::description(c.known_region) << "): " << d.points.size() << " discrepancies of "
            << d.compared << " log Fano points\n";
    }
    if (!cfg.out.empty()) detail::write_file(cfg.out, to_csv(s), out);
    return ok;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream&, const verify::Options* base = nullptr) {
    verify::Options opt = base ? *base : verify::Options{};
    if (cfg.cap < 0) throw DomainError("--cap must be >= 0");
    opt.cap = cfg.cap;
    bool all_ok = true;
    for (int id = 1; id <= 7; ++id) {
        if (cfg.criterion && cfg.criterion != id) continue;
        auto r = verify::run_criterion(id, opt);
        out << verify::summary_line(r) << '\n';
        for (const auto& ch : r.checks)
            if (!ch.ok) out << "  FAIL " << ch.name << ": " << ch.detail << '\n';
        all_ok = all_ok && r.ok();
    }
    return all_ok ? ok : verify_failed;
}

/**
 * @brief Run the command line; returns the process exit code. Errors are
 * reported on `err` with the violated precondition.
 */
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
               const verify::Options* verify_options = nullptr) {
    CLI::App app{"Exact K-stability invariants of log Fano threefold pairs", "kstab"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::optional<long> k, n, m;
    std::string a, b, c;
    auto common = [&](CLI::App* s, bool coeffs) {
        s->add_option("--case", cfg.case_id, "catalog row id (E1, C2, D5, ...)");
        s->add_option("--document", cfg.document, "JSON case document instead of a catalog row");
        s->add_option("--k", k, "family parameter k");
        s->add_option("--n", n, "family parameter n");
        s->add_option("--m", m, "family parameter m");
        if (coeffs) {
            s->add_option("--a", cfg.a, "coefficient of D1, exact p/q");
            s->add_option("--b", cfg.b, "coefficient of D2, exact p/q");
            s->add_option("--c", cfg.c, "coefficient of D3, exact p/q");
        }
    };
    auto* list = app.add_subcommand("list", "list catalog rows, or export one case document with --out");
    common(list, false);
    list->add_option("--out", cfg.out, "write the case document (JSON) here");
    auto* beta = app.add_subcommand("beta", "beta' of the test divisors at one point");
    common(beta, true);
    beta->add_option("--divisor", cfg.divisor, "restrict to one test divisor label");
    auto* az = app.add_subcommand("az", "Abban-Zhuang S(W;Z) and delta_Z bounds at one point");
    common(az, true);
    az->add_option("--center", cfg.center, "restrict to one center label");
    auto* region = app.add_subcommand("region", "classify a grid and write CSV (and optionally SVG)");
    common(region, false);
    region->add_option("--step", cfg.step, "grid step, exact p/q in (0, 1/4]");
    region->add_option("--out", cfg.out, "CSV path (- for standard output)");
    region->add_option("--svg", cfg.svg, "SVG path");
    auto* scn = app.add_subcommand("scan", "classify a grid and print status counts");
    common(scn, false);
    scn->add_option("--step", cfg.step, "grid step, exact p/q in (0, 1/4]");
    scn->add_option("--out", cfg.out, "optional CSV path");
    auto* ver = app.add_subcommand("verify", "run the acceptance suite");
    ver->add_option("--cap", cfg.cap, "parameter cap for the instability sweeps");
    ver->add_option("--criterion", cfg.criterion, "run a single criterion (1-7)")->check(CLI::Range(1, 7));

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return precondition;
    }
    if (k) cfg.params["k"] = *k;
    if (n) cfg.params["n"] = *n;
    if (m) cfg.params["m"] = *m;
    cfg.subcommand = app.get_subcommands().front()->get_name();

    try {
        if (cfg.subcommand == "list") return cmd_list(cfg, out, err);
        if (cfg.subcommand == "beta") return cmd_beta(cfg, out, err);
        if (cfg.subcommand == "az") return cmd_az(cfg, out, err);
        if (cfg.subcommand == "region") return cmd_region(cfg, out, err);
        if (cfg.subcommand == "scan") return cmd_scan(cfg, out, err);
        return cmd_verify(cfg, out, err, verify_options);
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return io;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return precondition;
    }
}

}  // namespace kstab::cli
