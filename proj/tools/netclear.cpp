#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "netclear/gen.hpp"
#include "netclear/io.hpp"
#include "netclear/kernels.hpp"
#include "netclear/oracle.hpp"
#include "netclear/solver.hpp"

namespace {

using netclear::io::json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitSolver = 2;
constexpr int kExitMismatch = 3;
constexpr int kExitUsage = 64;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string join_nodes(const netclear::NodeSet& s) {
    std::string out = "{";
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (k) out += ", ";
        out += std::to_string(s[k] + 1);
    }
    return out + "}";
}

struct Output {
    bool as_json = false;
    std::string out_path;

    void emit(const json& j, const std::string& text) const {
        const std::string payload = as_json ? j.dump(2) + "\n" : text;
        if (out_path.empty()) {
            std::cout << payload;
        } else {
            std::ofstream f(out_path);
            if (!f) throw netclear::ValidationError("cannot write " + out_path);
            f << payload;
        }
    }

    void error(const std::string& kind, const std::string& message) const {
        if (as_json)
            std::cerr << json{{"error", kind}, {"message", message}}.dump() << "\n";
        else
            std::cerr << "error (" << kind << "): " << message << "\n";
    }
};

std::string payments_text(const netclear::Vec& p) {
    std::string out;
    for (std::size_t i = 0; i < p.size(); ++i)
        out += "  node " + std::to_string(i + 1) + ": " + fmt(p[i]) + "\n";
    return out;
}

std::string solve_text(const netclear::SolveReport& r) {
    std::string out = "method: " + std::string(netclear::method_name(r.method)) + "\n";
    out += "iterations: " + std::to_string(r.iterations) + "\n";
    out += "p*:\n" + payments_text(r.p_star);
    out += "residual (limited liability): " + fmt(r.residual_limited_liability) + "\n";
    out += "residual (absolute priority): " + fmt(r.residual_priority) + "\n";
    if (r.bracket_gap) out += "bracket gap: " + fmt(*r.bracket_gap) + "\n";
    if (r.partition)
        out += "partition: P = " + join_nodes(r.partition->funded) +
               ", A = " + join_nodes(r.partition->upstream) +
               ", N = " + join_nodes(r.partition->stranded) + "\n";
    return out;
}

netclear::FinancialSystem load_validated(const std::string& path) {
    return netclear::validate_system(netclear::io::load_instance(path));
}

struct VerifyCheck {
    std::string name;
    bool pass;
    std::string detail;
};

double distance_to_family(const netclear::FixedPointFamily& fam, const netclear::Vec& p) {
    std::size_t pivot = 0;
    for (std::size_t j = 1; j < fam.direction.size(); ++j)
        if (std::abs(fam.direction[j]) > std::abs(fam.direction[pivot])) pivot = j;
    if (fam.direction[pivot] == 0.0) return std::numeric_limits<double>::infinity();
    double t = (p[pivot] - fam.base[pivot]) / fam.direction[pivot];
    t = std::clamp(t, fam.t_lo, fam.t_hi);
    double d = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j)
        d = std::max(d, std::abs(fam.base[j] + t * fam.direction[j] - p[j]));
    return d;
}

int run_verify(const std::string& path, double tol, std::size_t max_iter,
               std::size_t grid_steps, double perturb, const Output& out) {
    const auto sys = load_validated(path);
    netclear::IterateOptions opts{tol, max_iter, false};
    auto report = netclear::solve_clearing(sys, opts);
    if (perturb != 0.0 && !report.p_star.empty()) report.p_star[0] += perturb;

    constexpr double kOracleTol = 1e-9;
    constexpr double kAgreementTol = 1e-8;
    constexpr double kGridAgreementTol = 1e-6;

    std::vector<VerifyCheck> checks;
    json oracle_bf = nullptr, oracle_grid = nullptr;
    bool any_oracle = false;

    if (sys.size() <= netclear::kBruteForceMaxNodes) {
        any_oracle = true;
        const auto bf = netclear::brute_force_fixed_points(sys, kOracleTol);
        oracle_bf = netclear::io::fixed_point_set_json(bf);

        bool feasible = true;
        for (const auto& q : bf.points)
            feasible = feasible && netclear::check_limited_liability(sys, q).all_ok &&
                       netclear::check_absolute_priority(sys, q).all_ok;
        checks.push_back({"enumeration_points_feasible", feasible, ""});

        if (bf.is_singleton) {
            const double d = netclear::kernels::sup_diff(
                report.p_star.data(), bf.points.front().data(), sys.size());
            checks.push_back({"solver_matches_enumeration", d <= kAgreementTol,
                              "sup distance " + fmt(d)});
        } else {
            double d = std::numeric_limits<double>::infinity();
            for (const auto& q : bf.points)
                d = std::min(d, netclear::kernels::sup_diff(report.p_star.data(), q.data(),
                                                            sys.size()));
            if (bf.family) d = std::min(d, distance_to_family(*bf.family, report.p_star));
            checks.push_back({"solver_point_in_fixed_point_set", d <= kAgreementTol,
                              "sup distance " + fmt(d)});
        }
    }

    const bool cashless = std::all_of(sys.cash().begin(), sys.cash().end(),
                                      [](double v) { return v == 0.0; });
    if (cashless) {
        const bool zero = std::all_of(report.p_star.begin(), report.p_star.end(),
                                      [](double v) { return v == 0.0; });
        checks.push_back({"cashless_convention_zero", zero, ""});
    }

    if (sys.size() <= netclear::kGridMaxNodes) {
        any_oracle = true;
        const auto gd = netclear::grid_fixed_points(sys, grid_steps, kOracleTol);
        oracle_grid = netclear::io::fixed_point_set_json(gd);
        double d = std::numeric_limits<double>::infinity();
        for (const auto& q : gd.points)
            d = std::min(d, netclear::kernels::sup_diff(report.p_star.data(), q.data(),
                                                        sys.size()));
        checks.push_back({"solver_matches_grid", d <= kGridAgreementTol,
                          "sup distance " + fmt(d)});
    }

    if (!any_oracle) {
        out.error("usage", "instance too large for any verification oracle (n > " +
                               std::to_string(netclear::kBruteForceMaxNodes) + ")");
        return kExitUsage;
    }

    bool pass = true;
    json jchecks = json::array();
    std::string text = "solver p*:\n" + payments_text(report.p_star);
    for (const auto& c : checks) {
        pass = pass && c.pass;
        jchecks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        text += std::string(c.pass ? "PASS" : "FAIL") + "  " + c.name +
                (c.detail.empty() ? "" : " (" + c.detail + ")") + "\n";
    }
    text += pass ? "verification passed\n" : "verification FAILED\n";

    json j{{"solver", netclear::io::solve_report_json(report)},
           {"enumeration", std::move(oracle_bf)},
           {"grid", std::move(oracle_grid)},
           {"checks", std::move(jchecks)},
           {"pass", pass}};
    out.emit(j, text);
    return pass ? kExitOk : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"clearing payment vectors for liability networks"};
    app.require_subcommand(1);

    std::string input, method = "decompose", family = "random_dense";
    double tol = 1e-12, density = -1.0, cash_fraction = -1.0, perturb = 0.0;
    std::size_t max_iter = 0, nodes = 0, grid_steps = 12;
    std::uint64_t seed = 0;
    Output out;

    auto add_common = [&](CLI::App* cmd, bool with_input = true) {
        if (with_input) cmd->add_option("input", input, "instance JSON file")->required();
        cmd->add_flag("--json", out.as_json, "machine-readable output");
        cmd->add_option("--out", out.out_path, "write the report to a file");
    };

    auto* c_validate = app.add_subcommand("validate", "check an instance file");
    add_common(c_validate);

    auto* c_analyze = app.add_subcommand("analyze", "reachability, regularity and node classes");
    add_common(c_analyze);

    auto* c_solve = app.add_subcommand("solve", "compute the clearing payment vector");
    add_common(c_solve);
    c_solve->add_option("--tol", tol, "sup-norm convergence tolerance");
    c_solve->add_option("--max-iter", max_iter, "iteration cap (0 = 100n + 1000)");
    c_solve->add_option("--method", method, "decompose | iterate | bracket")
        ->check(CLI::IsMember({"decompose", "iterate", "bracket"}));

    auto* c_certify = app.add_subcommand("certify", "positivity certificate for the iteration");
    add_common(c_certify);

    auto* c_verify = app.add_subcommand("verify", "cross-check the solver against the oracles");
    add_common(c_verify);
    c_verify->add_option("--tol", tol, "solver tolerance");
    c_verify->add_option("--max-iter", max_iter, "iteration cap (0 = 100n + 1000)");
    c_verify->add_option("--grid-steps", grid_steps, "grid oracle resolution");
    c_verify->add_option("--perturb", perturb,
                         "offset added to the solver result before comparing; "
                         "lets a harness confirm that mismatches are caught");

    auto* c_gen = app.add_subcommand("gen", "generate a seeded instance");
    add_common(c_gen, false);
    c_gen->add_option("--nodes", nodes, "number of nodes")->required();
    c_gen->add_option("--seed", seed, "64-bit seed");
    c_gen->add_option("--family", family,
                      "random_dense | random_sparse | non_regular | cashless | pan_mixed");
    c_gen->add_option("--density", density, "edge density in (0, 1]");
    c_gen->add_option("--cash-fraction", cash_fraction, "fraction of nodes holding cash");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& ex) {
        if (ex.get_exit_code() == 0) return app.exit(ex);  // --help
        app.exit(ex);
        return kExitUsage;
    }

    try {
        if (c_validate->parsed()) {
            const auto sys = load_validated(input);
            out.emit(json{{"valid", true}, {"n", sys.size()}},
                     "valid system with " + std::to_string(sys.size()) + " nodes\n");
            return kExitOk;
        }

        if (c_analyze->parsed()) {
            const auto sys = load_validated(input);
            const json j = netclear::io::analyze_json(sys);
            std::string text = "regular: " + std::string(j["regular"].get<bool>() ? "yes" : "no") + "\n";
            if (!j["witness"].is_null())
                text += "witness: node " + std::to_string(j["witness"].get<std::size_t>()) + "\n";
            text += "P: " + j["P"].dump() + "\nA: " + j["A"].dump() + "\nN: " + j["N"].dump() + "\n";
            out.emit(j, text);
            return kExitOk;
        }

        if (c_solve->parsed()) {
            const auto sys = load_validated(input);
            netclear::IterateOptions opts{tol, max_iter, false};
            netclear::SolveReport report;
            if (method == "iterate")
                report = netclear::solve_iterate(sys, opts);
            else if (method == "bracket")
                report = netclear::solve_bracketed(sys, opts);
            else
                report = netclear::solve_clearing(sys, opts);
            out.emit(netclear::io::solve_report_json(report), solve_text(report));
            return kExitOk;
        }

        if (c_certify->parsed()) {
            const auto sys = load_validated(input);
            const auto cert = netclear::positivity_certificate(sys);
            std::string text = "delta: " + fmt(cert.delta) + "\n";
            text += "chain holds for all m <= n: ";
            text += std::all_of(cert.chain_ok.begin(), cert.chain_ok.end(),
                                [](char c) { return c != 0; })
                        ? "yes\n"
                        : "NO\n";
            text += "strictly positive after n rounds: ";
            text += cert.strictly_positive_at_n ? "yes\n" : "NO\n";
            out.emit(netclear::io::certificate_json(cert), text);
            return kExitOk;
        }

        if (c_verify->parsed()) return run_verify(input, tol, max_iter, grid_steps, perturb, out);

        if (c_gen->parsed()) {
            netclear::GenSpec spec;
            spec.n = nodes;
            spec.seed = seed;
            spec.family = netclear::family_from_name(family);
            if (density >= 0.0) spec.density = density;
            if (cash_fraction >= 0.0) spec.cash_fraction = cash_fraction;
            const auto sys = netclear::generate(spec);
            const json j = netclear::io::instance_json(sys);
            out.emit(j, j.dump(2) + "\n");
            return kExitOk;
        }
    } catch (const netclear::SizeLimitError& ex) {
        out.error("size_limit", ex.what());
        return kExitUsage;
    } catch (const netclear::InfeasibleSpecError& ex) {
        out.error("infeasible_spec", ex.what());
        return kExitUsage;
    } catch (const netclear::ValidationError& ex) {
        out.error("validation", ex.what());
        return kExitValidation;
    } catch (const netclear::SolverError& ex) {
        out.error("solver", ex.what());
        return kExitSolver;
    } catch (const std::exception& ex) {
        out.error("internal", ex.what());
        return kExitSolver;
    }

    return kExitUsage;
}
