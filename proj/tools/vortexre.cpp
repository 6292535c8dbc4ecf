// Command-line surface for the four-vortex collinear relative-equilibrium
// library: per-m solving, parameter sweeps as CSV/JSON, bifurcation values,
// and dynamical verification of individual solutions.
//
// Exit codes: 0 success, 1 usage or internal error, 2 empty result,
// 3 verification failure.

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "vortex/dynamics.hpp"
#include "vortex/equilibria.hpp"
#include "vortex/model.hpp"
#include "vortex/stability.hpp"

namespace {

constexpr const char* csv_header =
    "m,ordering,group,x3,x4,c,omega,T,D,l1_re,l1_im,l2_re,l2_im,region,verdict";

const char* group_name(vortex::Group g) { return g == vortex::Group::I ? "I" : "II"; }

std::string csv_row(double m, const vortex::Configuration& cfg, const vortex::Ordering& ord,
                    const vortex::StabilityReport& rep) {
    return fmt::format(
        "{:.12g},{},{},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},"
        "{:.12g},{},{}",
        m, ord.label(), group_name(ord.group), cfg.x[2], cfg.x[3], cfg.c, cfg.omega, rep.T, rep.D,
        rep.lambdas[0].real(), rep.lambdas[0].imag(), rep.lambdas[2].real(),
        rep.lambdas[2].imag(), vortex::region_name(rep.region), vortex::verdict_name(rep.verdict));
}

nlohmann::json json_solution(const vortex::Configuration& cfg, const vortex::Ordering& ord,
                             const vortex::StabilityReport& rep) {
    return {
        {"ordering", ord.label()},
        {"group", group_name(ord.group)},
        {"x3", cfg.x[2]},
        {"x4", cfg.x[3]},
        {"c", cfg.c},
        {"omega", cfg.omega},
        {"T", rep.T},
        {"D", rep.D},
        {"lambda1", {{"re", rep.lambdas[0].real()}, {"im", rep.lambdas[0].imag()}}},
        {"lambda2", {{"re", rep.lambdas[2].real()}, {"im", rep.lambdas[2].imag()}}},
        {"region", vortex::region_name(rep.region)},
        {"verdict", vortex::verdict_name(rep.verdict)},
    };
}

// Writes to the given path or stdout; returns false on I/O failure.
bool emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return static_cast<bool>(std::cout);
    }
    std::ofstream out(out_path, std::ios::binary);
    out << text;
    out.close();
    if (!out) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return false;
    }
    return true;
}

bool near_excluded_mass(double m) { return std::abs(m + 3.0) < 1e-9; }

int cmd_solve(double m, const std::string& format, const std::string& out_path) {
    if (near_excluded_mass(m)) {
        std::cerr << "error: m = -3 is excluded (total circulation vanishes)\n";
        return 1;
    }
    vortex::SolutionSet set = vortex::solve_all(m);

    std::string text;
    if (format == "json") {
        nlohmann::json doc;
        doc["m"] = m;
        doc["count"] = set.count;
        doc["solutions"] = nlohmann::json::array();
        for (const auto& [cfg, ord] : set.solutions)
            doc["solutions"].push_back(json_solution(cfg, ord, vortex::stability_report(m, cfg)));
        text = doc.dump(2) + "\n";
    } else {
        text = std::string(csv_header) + "\n";
        for (const auto& [cfg, ord] : set.solutions)
            text += csv_row(m, cfg, ord, vortex::stability_report(m, cfg)) + "\n";
    }
    if (!emit(out_path, text)) return 1;
    if (set.count == 0) {
        std::cerr << fmt::format("no collinear relative equilibria at m = {:.12g}\n", m);
        return 2;
    }
    return 0;
}

int cmd_sweep(double m_min, double m_max, int steps, const std::string& ordering,
              const std::string& group, const std::string& format, const std::string& out_path) {
    std::string text;
    nlohmann::json rows = nlohmann::json::array();
    if (format != "json") text = std::string(csv_header) + "\n";

    long emitted = 0;
    for (int k = 0; k < steps; ++k) {
        double m = m_min + (m_max - m_min) * k / (steps - 1);
        if (near_excluded_mass(m)) continue;
        vortex::SolutionSet set = vortex::solve_all(m);
        for (const auto& [cfg, ord] : set.solutions) {
            if (!ordering.empty() && ord.label() != ordering) continue;
            if (!group.empty() && group_name(ord.group) != group) continue;
            auto rep = vortex::stability_report(m, cfg);
            if (format == "json") {
                nlohmann::json row = json_solution(cfg, ord, rep);
                row["m"] = m;
                rows.push_back(std::move(row));
            } else {
                text += csv_row(m, cfg, ord, rep) + "\n";
            }
            ++emitted;
        }
    }
    if (format == "json") text = rows.dump(2) + "\n";
    if (!emit(out_path, text)) return 1;
    if (emitted == 0) {
        std::cerr << "no solutions in the requested range\n";
        return 2;
    }
    return 0;
}

int cmd_bifurcations() {
    auto roots = vortex::psi_bifurcation_roots();
    fmt::print("bifurcation values (repeated-eigenvalue roots in (-1, 0)):\n");
    fmt::print("  m*  = {:.9f}\n", roots.m_star);
    fmt::print("  m_c = {:.9f}\n", roots.m_c);
    fmt::print("solution-count boundaries:\n");
    fmt::print("  m = -1    no solutions for m <= -1; 6 Group I solutions for m > -1\n");
    fmt::print("  m = -1/2  Group II solutions appear for m > -1/2 (12 total)\n");
    fmt::print("stability windows (Group I):\n");
    fmt::print("  -1 < m < m*    linearly stable\n");
    fmt::print("  m = m*         spectrally stable (repeated pure-imaginary pair)\n");
    fmt::print("  m* < m < m_c   unstable, complex quartuplet (region IV)\n");
    fmt::print("  m > m_c        unstable, two real pairs (region II)\n");
    fmt::print("Group II: unstable with two real pairs for all m > -1/2\n");
    return 0;
}

int cmd_verify(double m, const std::string& ordering, double periods, double tol,
               const std::string& format) {
    if (near_excluded_mass(m)) {
        std::cerr << "error: m = -3 is excluded (total circulation vanishes)\n";
        return 1;
    }
    vortex::SolutionSet set = vortex::solve_all(m);
    const vortex::Configuration* cfg = nullptr;
    std::string available;
    for (const auto& [c, ord] : set.solutions) {
        if (!available.empty()) available += ", ";
        available += ord.label();
        if (ord.label() == ordering) cfg = &c;
    }
    if (cfg == nullptr) {
        std::cerr << fmt::format("error: no solution with ordering {} at m = {:.12g}\n", ordering,
                                 m);
        std::cerr << "available orderings: " << (available.empty() ? "none" : available) << "\n";
        return 1;
    }

    vortex::Circulations circ(m);
    auto rec = vortex::verify_relative_equilibrium(*cfg, circ, periods, tol);

    if (format == "json") {
        nlohmann::json doc{
            {"m", m},
            {"ordering", ordering},
            {"periods", periods},
            {"period_return", rec.period_return},
            {"h_drift", rec.h_drift},
            {"i_drift", rec.i_drift},
            {"trivial_deviation", rec.trivial_deviation},
            {"spectrum_mismatch", rec.spectrum_mismatch},
            {"aborted", rec.aborted},
            {"pass", rec.ok()},
        };
        doc["spectrum"] = nlohmann::json::array();
        for (const auto& ev : rec.spectrum)
            doc["spectrum"].push_back({{"re", ev.real()}, {"im", ev.imag()}});
        std::cout << doc.dump(2) << "\n";
    } else {
        auto line = [](const char* name, double value, double limit) {
            fmt::print("  {:<18} {:>12.3e}  [{}]  (limit {:.0e})\n", name, value,
                       value < limit ? "pass" : "FAIL", limit);
        };
        fmt::print("verification of m = {:.12g}, ordering {} ({} period{})\n", m, ordering,
                   periods, periods == 1.0 ? "" : "s");
        if (rec.aborted) fmt::print("  integration ABORTED near a collision\n");
        line("period return", rec.period_return, 1e-6);
        line("H drift", rec.h_drift, 1e-8);
        line("I drift", rec.i_drift, 1e-8);
        line("trivial {0,0,+-i}", rec.trivial_deviation, 1e-7);
        line("spectrum match", rec.spectrum_mismatch, 1e-6);
        std::string spectrum;
        for (const auto& ev : rec.spectrum) {
            if (!spectrum.empty()) spectrum += ", ";
            spectrum += fmt::format("{:.6g}{:+.6g}i", ev.real(), ev.imag());
        }
        fmt::print("  spectrum: {}\n", spectrum);
        fmt::print("result: {}\n", rec.ok() ? "PASS" : "FAIL");
    }
    return rec.ok() ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Collinear relative equilibria of the planar four-vortex problem with "
        "circulations (1, 1, 1, m)"};
    app.require_subcommand(1);

    double m = 0.0, m_min = 0.0, m_max = 0.0, periods = 1.0, tol = 1e-10;
    int steps = 0;
    std::string format = "csv", out_path, ordering, group;

    auto is_format = CLI::IsMember({"csv", "json"});
    auto is_ordering = CLI::Validator(
        [](std::string& s) -> std::string {
            std::string sorted = s;
            std::sort(sorted.begin(), sorted.end());
            return sorted == "1234" ? "" : "ordering must be a permutation of 1234";
        },
        "ORDERING");

    CLI::App* solve = app.add_subcommand("solve", "All solutions and stability at one m");
    solve->add_option("--m", m, "circulation ratio")->required();
    solve->add_option("--format", format, "output format")->check(is_format);
    solve->add_option("--out", out_path, "output path (default stdout)");

    CLI::App* sweep = app.add_subcommand("sweep", "Solutions over a uniform m-grid");
    sweep->add_option("--m-min", m_min, "grid start")->required();
    sweep->add_option("--m-max", m_max, "grid end")->required();
    sweep->add_option("--steps", steps, "number of grid points")->required()
        ->check(CLI::Range(2, 100000000));
    sweep->add_option("--ordering", ordering, "restrict to one ordering, e.g. 1234")
        ->check(is_ordering);
    sweep->add_option("--group", group, "restrict to Group I or II")
        ->check(CLI::IsMember({"I", "II"}));
    sweep->add_option("--format", format, "output format")->check(is_format);
    sweep->add_option("--out", out_path, "output path (default stdout)");

    app.add_subcommand("bifurcations", "Bifurcation values and stability windows");

    CLI::App* verify = app.add_subcommand("verify", "Dynamical verification of one solution");
    verify->add_option("--m", m, "circulation ratio")->required();
    verify->add_option("--ordering", ordering, "ordering label, e.g. 1234")
        ->required()
        ->check(is_ordering);
    verify->add_option("--periods", periods, "rotation periods to integrate")
        ->check(CLI::PositiveNumber);
    verify->add_option("--tol", tol, "integrator tolerance")->check(CLI::PositiveNumber);
    verify->add_option("--format", format, "output format")->check(is_format);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (app.got_subcommand("solve")) return cmd_solve(m, format, out_path);
        if (app.got_subcommand("sweep")) {
            if (!(m_min < m_max)) {
                std::cerr << "error: --m-min must be below --m-max\n";
                return 1;
            }
            return cmd_sweep(m_min, m_max, steps, ordering, group, format, out_path);
        }
        if (app.got_subcommand("bifurcations")) return cmd_bifurcations();
        if (app.got_subcommand("verify")) return cmd_verify(m, ordering, periods, tol, format);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
