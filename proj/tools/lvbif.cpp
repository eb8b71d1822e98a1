#include "lvbif/bifurcation.hpp"
#include "lvbif/config.hpp"
#include "lvbif/dynamics.hpp"
#include "lvbif/errors.hpp"
#include "lvbif/oracle.hpp"
#include "lvbif/regions.hpp"
#include "lvbif/render.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#ifndef LVBIF_FIXTURES_DIR
#define LVBIF_FIXTURES_DIR "fixtures"
#endif

using namespace lvbif;

namespace {

enum Exit { ok = 0, mismatch = 1, config_error = 2, unsupported = 3, analysis_error = 4 };

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

std::string eig(const std::complex<double>& z) {
    if (z.imag() == 0.0) return num(z.real());
    return num(z.real()) + (z.imag() < 0 ? "-" : "+") + num(std::abs(z.imag())) + "i";
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path);
    out << text;
}

ParamPoint to_mu(const std::vector<double>& v) { return {v.at(0), v.at(1)}; }

json case_json(const CaseDescriptor& c) {
    return {{"family", to_string(c.degeneracy)}, {"signs", c.sign_string()}, {"label", c.label},
            {"hypotheses", c.hypotheses}, {"table_supported", c.table_supported}, {"notes", c.notes}};
}

void print_case(const CaseDescriptor& c) {
    std::cout << "class " << to_string(c.degeneracy) << ", case " << c.label << ", signs (" << c.sign_string() << ")\n";
    std::cout << "hypotheses:";
    for (const auto& h : c.hypotheses) std::cout << ' ' << h;
    std::cout << '\n';
    for (const auto& n : c.notes) std::cout << "note: " << n << '\n';
}

int cmd_analyze(const std::string& config, const std::vector<double>& mu_v, const std::string& out) {
    const ReducedSystem sys = load_system(config);
    const CaseDescriptor c = select_case(sys);
    const ParamPoint mu = to_mu(mu_v);
    print_case(c);
    const EquilibriumSet eqs = find_equilibria(sys, mu);
    json report{{"case", case_json(c)}, {"mu", {mu.mu1, mu.mu2}}, {"equilibria", json::array()}};
    std::cout << "mu = (" << num(mu.mu1) << ", " << num(mu.mu2) << ")\n";
    std::cout << "label  xi1           xi2           lambda1           lambda2           kind            proper trivial\n";
    for (const auto& e : eqs.points) {
        char line[256];
        std::snprintf(line, sizeof line, "%-6s %-13s %-13s %-17s %-17s %-15s %-6s %s\n", to_string(e.label).c_str(),
                      num(e.xi[0]).c_str(), num(e.xi[1]).c_str(), eig(e.eigenvalues[0]).c_str(),
                      eig(e.eigenvalues[1]).c_str(), to_string(e.kind).c_str(), e.proper ? "yes" : "no",
                      e.trivial ? "yes" : "no");
        std::cout << line;
        report["equilibria"].push_back({{"label", to_string(e.label)},
                                        {"xi", {e.xi[0], e.xi[1]}},
                                        {"eigenvalues",
                                         {{e.eigenvalues[0].real(), e.eigenvalues[0].imag()},
                                          {e.eigenvalues[1].real(), e.eigenvalues[1].imag()}}},
                                        {"kind", to_string(e.kind)},
                                        {"proper", e.proper},
                                        {"trivial", e.trivial}});
    }
    for (const auto& n : eqs.notes) std::cout << "note: " << n.kind << ": " << n.message << '\n';
    const std::string sig = signature_of(eqs, sys.degeneracy);
    std::cout << "signature " << sig << '\n';
    report["signature"] = sig;
    if (mu.norm() > 0.0) {
        try {
            const RegionReport r = region_membership(sys, mu);
            std::cout << "region: sector " << r.sector_id << " between " << to_string(r.lo_curve) << " and "
                      << to_string(r.hi_curve) << ", angles [" << num(r.angle_lo) << ", " << num(r.angle_hi) << "]\n";
            report["region"] = {{"sector", r.sector_id},
                                {"angle_lo", r.angle_lo},
                                {"angle_hi", r.angle_hi},
                                {"lo_curve", to_string(r.lo_curve)},
                                {"hi_curve", to_string(r.hi_curve)}};
        } catch (const OnCurve& e) {
            std::cout << "region: none (" << e.what() << ")\n";
        } catch (const SectorTooThin& e) {
            std::cout << "region: unresolved (" << e.what() << ")\n";
        }
    }
    if (!out.empty()) write_file(out, report.dump(2) + "\n");
    return Exit::ok;
}

int cmd_curves(const std::string& config, std::vector<double> radii, const std::vector<std::string>& kinds,
               const std::string& out, const std::string& svg) {
    const ReducedSystem sys = load_system(config);
    if (radii.empty()) radii = {1e-4, 3e-4, 1e-3};
    std::vector<CurveKind> list;
    if (kinds.empty()) {
        list = admissible_kinds(sys.degeneracy);
    } else {
        for (const auto& k : kinds) {
            const CurveKind ck = parse_curve_kind(k);
            if (!admissible(sys.degeneracy, ck)) {
                std::cout << "skipped " << k << ": not admissible in the " << to_string(sys.degeneracy) << " class\n";
                continue;
            }
            list.push_back(ck);
        }
    }
    std::vector<BifurcationCurve> curves;
    for (CurveKind k : list) {
        BifurcationCurve c = trace_curve(sys, k, radii);
        std::cout << to_string(k) << ": " << c.samples.size() << " samples";
        if (!c.leading_form.empty() && !c.samples.empty())
            std::cout << ", " << c.leading_form << " fitted " << num(c.fitted_leading) << " predicted "
                      << num(c.predicted_leading);
        if (k == CurveKind::H && !c.samples.empty()) std::cout << " (slope)";
        std::cout << '\n';
        for (const auto& n : c.notes) std::cout << "  note: " << n << '\n';
        curves.push_back(std::move(c));
    }
    if (!out.empty()) write_file(out, curves_csv(curves));
    if (!svg.empty()) write_file(svg, diagram_svg(curves));
    return Exit::ok;
}

int cmd_portrait(const std::string& config, const std::vector<double>& mu_v, int grid, const std::string& svg,
                 const std::string& csv) {
    const ReducedSystem sys = load_system(config);
    const ParamPoint mu = to_mu(mu_v);
    if (mu.norm() == 0.0) throw ConfigError("portrait requires mu != 0");
    const Portrait p = portrait(sys, mu, grid);
    std::map<std::string, int> counts;
    for (const auto& t : p.trajectories) ++counts[t.terminal_name()];
    std::cout << "window [0, " << num(p.window.hi1) << "]^2, " << p.trajectories.size() << " trajectories, "
              << p.separatrices.size() << " separatrices\n";
    for (const auto& [k, v] : counts) std::cout << "  " << k << ": " << v << '\n';
    if (!svg.empty()) write_file(svg, portrait_svg(p));
    if (!csv.empty()) write_file(csv, trajectories_csv(p));
    return Exit::ok;
}

void print_table(const VerificationReport& rep) {
    const auto& rows = row_labels(rep.family);
    const std::set<std::string> computed(rep.computed.begin(), rep.computed.end());
    const auto& table = reference_table(rep.family);
    std::cout << "reference columns (x = reproduced):\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        char lab[8];
        std::snprintf(lab, sizeof lab, "%-4s", to_string(rows[i]).c_str());
        std::cout << "  " << lab;
        for (const auto& col : table) std::cout << ' ' << col[i];
        std::cout << '\n';
    }
    std::cout << "      ";
    for (const auto& col : table) std::cout << ' ' << (computed.count(col) ? 'x' : '.');
    std::cout << '\n';
}

int cmd_verify(const std::string& family_s, double r, const std::string& dir, const std::string& out, bool oracle,
               std::uint32_t seed) {
    const Degeneracy family = parse_family(family_s);
    if (family == Degeneracy::DoublyDegenerate)
        throw UnsupportedCase("the doubly degenerate class is outside the covered cases");
    const auto fixtures = load_fixtures(dir, family);
    const VerificationReport rep = verify_tables(family, fixtures, r);

    json report{{"family", to_string(family)}, {"radius", r}, {"diagrams", json::array()}};
    for (const auto& d : rep.diagrams) {
        std::cout << d.fixture << ": case " << d.case_label << " signs (" << d.computed_signs << ")";
        if (!d.case_match) std::cout << " DECLARED (" << d.declared_signs << ")";
        if (!d.error.empty()) std::cout << " error: " << d.error;
        std::cout << '\n';
        json sectors = json::array();
        for (const auto& s : d.decomposition.sectors) {
            std::cout << "  sector " << s.sector_id << " [" << num(s.angle_lo) << ", " << num(s.angle_hi) << "] "
                      << s.signature << " (" << to_string(s.lo_curve) << " .. " << to_string(s.hi_curve) << ")\n";
            sectors.push_back({{"id", s.sector_id},
                               {"angle_lo", s.angle_lo},
                               {"angle_hi", s.angle_hi},
                               {"signature", s.signature},
                               {"lo_curve", to_string(s.lo_curve)},
                               {"hi_curve", to_string(s.hi_curve)}});
        }
        report["diagrams"].push_back({{"fixture", d.fixture},
                                      {"case", d.case_label},
                                      {"declared_signs", d.declared_signs},
                                      {"computed_signs", d.computed_signs},
                                      {"case_match", d.case_match},
                                      {"error", d.error},
                                      {"sectors", sectors}});
    }
    print_table(rep);
    std::cout << "regions " << rep.total_regions << " of " << rep.expected_total << '\n';
    for (const auto& s : rep.unmatched_computed) std::cout << "  + " << s << " (computed, not in table)\n";
    for (const auto& s : rep.unmatched_table) std::cout << "  - " << s << " (in table, not computed)\n";
    for (const auto& [sig, names] : rep.shared) {
        std::cout << "  shared " << sig << ':';
        for (const auto& n : names) std::cout << ' ' << n;
        std::cout << '\n';
    }
    report["total_regions"] = rep.total_regions;
    report["expected_regions"] = rep.expected_total;
    report["unmatched_computed"] = rep.unmatched_computed;
    report["unmatched_table"] = rep.unmatched_table;

    bool pass = rep.success();
    const std::vector<double> radii{r / 10.0, r / std::sqrt(10.0), r};
    std::size_t suite_total = 0, suite_bad = 0;
    for (const auto& f : fixtures) {
        if (f.sys.degeneracy != family) continue;
        for (const auto& e : sotomayor_suite(f.sys, radii)) {
            ++suite_total;
            if (e.ok()) continue;
            ++suite_bad;
            std::cout << "  sotomayor " << f.name << ' ' << to_string(e.kind) << " at (" << num(e.mu.mu1) << ", "
                      << num(e.mu.mu2) << "): expected " << to_string(e.expected) << ", got "
                      << (e.verdict ? to_string(*e.verdict) : "error: " + e.error) << '\n';
        }
    }
    std::cout << "sotomayor verdicts " << suite_total - suite_bad << " of " << suite_total << " correct\n";
    report["sotomayor"] = {{"total", suite_total}, {"incorrect", suite_bad}};
    pass = pass && suite_bad == 0;

    if (oracle) {
        std::size_t bad = 0;
        for (const auto& d : rep.diagrams) {
            const auto it = std::find_if(fixtures.begin(), fixtures.end(), [&](const Fixture& f) { return f.name == d.fixture; });
            if (!d.error.empty()) continue;
            const ScanComparison sc = compare_scan(sign_scan(it->sys, d.decomposition.radius, 1440), d.decomposition);
            for (const auto& i : sc.issues) std::cout << "  oracle " << d.fixture << ": " << i << '\n';
            bad += sc.issues.size();
            for (const auto& s : d.decomposition.sectors) {
                const EquilibriumSet eqs = find_equilibria(it->sys, s.representative);
                double w = 0.0;
                for (const auto& e : eqs.points) w = std::max({w, std::abs(e.xi[0]), std::abs(e.xi[1])});
                const Box box{-2.0 * w, 2.0 * w, -2.0 * w, 2.0 * w};
                const RootComparison rc =
                    compare_roots(eqs, grid_equilibria(it->sys, s.representative, box, 400, seed), box, 1e-9);
                for (const auto& i : rc.issues) std::cout << "  oracle " << d.fixture << ": " << i << '\n';
                bad += rc.issues.size();
            }
        }
        std::cout << "oracle disagreements " << bad << '\n';
        report["oracle_disagreements"] = bad;
        pass = pass && bad == 0;
    }
    report["pass"] = pass;
    if (!out.empty()) write_file(out, report.dump(2) + "\n");
    std::cout << (pass ? "PASS" : "FAIL") << '\n';
    return pass ? Exit::ok : Exit::mismatch;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bifurcation analysis of planar Lotka-Volterra mutualism systems"};
    app.require_subcommand(1);

    std::string config, out, svg, csv, family, fixtures = LVBIF_FIXTURES_DIR;
    std::vector<double> mu, radii;
    std::vector<std::string> kinds;
    int grid = 10;
    double r = 1e-3;
    std::uint32_t seed = 1;
    bool oracle = false;

    auto* analyze = app.add_subcommand("analyze", "case summary and equilibria at mu");
    analyze->add_option("--config", config, "system file")->required();
    analyze->add_option("--mu", mu, "mu1,mu2")->delimiter(',')->expected(2)->required();
    analyze->add_option("--out", out, "JSON report path");

    auto* curves = app.add_subcommand("curves", "trace bifurcation curves");
    curves->add_option("--config", config, "system file")->required();
    curves->add_option("--radii", radii, "r1,r2,...")->delimiter(',');
    curves->add_option("--kinds", kinds, "curve kinds")->delimiter(',');
    curves->add_option("--out", out, "curve CSV path");
    curves->add_option("--svg", svg, "diagram SVG path");

    auto* port = app.add_subcommand("portrait", "phase portrait at mu");
    port->add_option("--config", config, "system file")->required();
    port->add_option("--mu", mu, "mu1,mu2")->delimiter(',')->expected(2)->required();
    port->add_option("--grid", grid, "lattice size per axis")->check(CLI::Range(1, 200));
    port->add_option("--svg", svg, "portrait SVG path");
    port->add_option("--csv", csv, "trajectory CSV path");

    auto* verify = app.add_subcommand("verify", "reproduce the type tables on the canonical fixtures");
    verify->add_option("--family", family, "nondegenerate|deltazero|thetazero")->required();
    verify->add_option("--r", r, "radius of the parameter circle")->check(CLI::PositiveNumber);
    verify->add_option("--fixtures", fixtures, "fixture directory");
    verify->add_option("--out", out, "JSON report path");
    verify->add_flag("--oracle", oracle, "also compare against the brute-force oracles");
    verify->add_option("--seed", seed, "jitter seed for the oracle lattice");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? Exit::ok : Exit::config_error;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(config, mu, out);
        if (curves->parsed()) return cmd_curves(config, radii, kinds, out, svg);
        if (port->parsed()) return cmd_portrait(config, mu, grid, svg, csv);
        if (verify->parsed()) return cmd_verify(family, r, fixtures, out, oracle, seed);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return Exit::config_error;
    } catch (const UnsupportedCase& e) {
        std::cerr << "unsupported case: " << e.what() << '\n';
        return Exit::unsupported;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Exit::analysis_error;
    }
    return Exit::ok;
}
