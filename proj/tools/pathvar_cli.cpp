// pathvar command-line front end: run the built-in scenarios and compute
// Euler-Lagrange paths, gradient pairings, constraint checks and gradient
// flows for paths supplied as CSV files.
//
// Exit status contract: 0 success, 1 usage or input error, 2 tolerance or
// convergence failure, 3 numerical failure (domain guard, stalled flow,
// degenerate constraint).

#include "pathvar/constraints.hpp"
#include "pathvar/csv.hpp"
#include "pathvar/errors.hpp"
#include "pathvar/flow.hpp"
#include "pathvar/scenarios.hpp"
#include "pathvar/svg.hpp"
#include "pathvar/variation.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

namespace fs = std::filesystem;
using namespace pathvar;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kTolerance = 2;
constexpr int kNumerical = 3;

struct LagrangianFlags {
    std::string id;
    double g = 9.8;
    int y_nodes = 64;

    Lagrangian build() const {
        BuiltinParams params;
        params.g = g;
        if (id == "regression")
            params.density = DensityFn{[](double, double) { return 1.0; }, y_nodes};
        return builtin(id, params);
    }

    void attach(CLI::App* cmd) {
        cmd->add_option("--lagrangian", id, "built-in Lagrangian id")->required();
        cmd->add_option("--g", g, "gravity constant for the projectile Lagrangian");
        cmd->add_option("--y-nodes", y_nodes, "y-quadrature intervals for regression");
    }
};

void write_file(const fs::path& file, const std::string& contents) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + file.string());
    out << contents;
}

int run_scenario_cmd(const std::vector<std::string>& ids, std::optional<int> grid_points,
                     const std::string& out_dir, const std::string& format) {
    bool all_pass = true;
    for (const auto& id : ids) {
        ScenarioOverrides ov;
        ov.grid_points = grid_points;
        const ScenarioReport rep = run_scenario(id, ov);
        rep.write_text(std::cout);
        all_pass = all_pass && rep.all_pass();

        if (!out_dir.empty()) {
            fs::create_directories(out_dir);
            const fs::path dir(out_dir);
            {
                std::ostringstream text;
                rep.write_text(text);
                write_file(dir / (id + "_report.txt"), text.str());
            }
            if (format == "csv") {
                for (const auto& artifact : rep.paths)
                    write_path_csv_file((dir / (id + "_" + artifact.name + ".csv")).string(),
                                        artifact.path);
            } else if (format == "svg") {
                if (rep.figure)
                    write_file(dir / (id + ".svg"), render_svg(*rep.figure));
                else
                    std::cerr << "note: scenario " << id << " has no figure\n";
            }
        }
    }
    return all_pass ? kOk : kTolerance;
}

int run_el_cmd(const LagrangianFlags& lf, const std::string& path_file,
               const std::string& out_file) {
    const Path gamma = read_path_csv_file(path_file);
    const Lagrangian lag = lf.build();
    const ELPath el = el_path(lag, gamma);
    if (!out_file.empty()) write_path_csv_file(out_file, el.path);
    std::cout << "interior_residual " << format_double(sup_norm(el.path, true)) << '\n';
    return kOk;
}

int run_pair_cmd(const LagrangianFlags& lf, const std::string& path_file,
                 const std::string& dir_file, double fd_step) {
    const Path gamma = read_path_csv_file(path_file);
    const Direction eta(read_path_csv_file(dir_file));
    const Lagrangian lag = lf.build();
    const double paired = pair_gradient(el_path(lag, gamma), eta);
    const double fd = fd_directional(lag, gamma, eta, fd_step);
    std::cout << "pair_gradient " << format_double(paired) << '\n';
    std::cout << "fd_directional " << format_double(fd) << '\n';
    std::cout << "difference " << format_double(fd - paired) << '\n';
    return kOk;
}

int run_descend_cmd(const LagrangianFlags& lf, const std::string& path_file,
                    const std::string& out_file, const std::string& trace_file,
                    const FlowOptions& opts) {
    const Path start = read_path_csv_file(path_file);
    const Lagrangian lag = lf.build();
    FlowTrace trace;
    try {
        trace = descend(lag, FixedEndpointPath(start), opts);
    } catch (const FlowError& e) {
        std::cerr << "error: " << e.what() << '\n';
        if (!out_file.empty()) {
            write_path_csv_file(out_file, e.snapshot().path());
            std::cerr << "iterate snapshot written to " << out_file << '\n';
        }
        return kNumerical;
    }
    if (!out_file.empty()) write_path_csv_file(out_file, trace.final.path());
    if (!trace_file.empty()) {
        std::ofstream out(trace_file, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open for writing: " + trace_file);
        write_trace_csv(out, trace);
    }
    const FlowSample& last = trace.iterates_kept.back();
    std::cout << "iterations " << trace.iterations << '\n';
    std::cout << "action " << format_double(last.action) << '\n';
    std::cout << "residual " << format_double(last.residual) << '\n';
    std::cout << "converged " << (trace.converged ? "true" : "false") << '\n';
    return trace.converged ? kOk : kTolerance;
}

int run_constraint_cmd(const LagrangianFlags& lf, const std::string& path_file,
                       const std::string& g_builtin, double level,
                       const std::string& m_lagrangian, std::optional<double> value,
                       const std::string& out_file) {
    const Path gamma = read_path_csv_file(path_file);
    const Lagrangian lag = lf.build();
    ConstraintReport report;
    if (!g_builtin.empty()) {
        if (g_builtin != "sphere")
            throw std::invalid_argument("unknown --g-builtin '" + g_builtin + "'");
        report = holonomic_check(lag, sphere_constraint(level), gamma);
    } else if (!m_lagrangian.empty()) {
        LagrangianFlags mf = lf;
        mf.id = m_lagrangian;
        report = isoperimetric_check(lag, mf.build(), gamma, value);
        std::cout << "lambda_star " << format_double(*report.lambda_scalar) << '\n';
    } else {
        throw std::invalid_argument("constraint-check needs --g-builtin or --m-lagrangian");
    }
    std::cout << "residual_norm " << format_double(report.residual_norm) << '\n';
    std::cout << "constraint_violation " << format_double(report.constraint_violation) << '\n';
    if (!out_file.empty()) {
        std::ofstream out(out_file, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open for writing: " + out_file);
        write_constraint_csv(out, report);
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"path-space variational engine"};
    app.require_subcommand(1);

    // scenario
    auto* scen = app.add_subcommand("scenario", "run a built-in scenario end to end");
    std::string scen_id;
    bool scen_all = false;
    int scen_grid = 0;
    std::string scen_out, scen_format = "report";
    scen->add_option("id", scen_id, "scenario id (see list below)");
    scen->add_flag("--all", scen_all, "run every scenario");
    auto* grid_opt = scen->add_option("--grid-points", scen_grid,
                                      "override the grid interval count");
    scen->add_option("--out", scen_out, "directory for report/CSV/SVG artifacts");
    scen->add_option("--format", scen_format, "artifact format")
        ->check(CLI::IsMember({"report", "csv", "svg"}));

    // el
    auto* el = app.add_subcommand("el", "compute the Euler-Lagrange path of a CSV path");
    LagrangianFlags el_lag;
    std::string el_path_file, el_out;
    el_lag.attach(el);
    el->add_option("--path", el_path_file, "input path CSV")->required();
    el->add_option("--out", el_out, "output CSV for the Euler-Lagrange path");

    // pair
    auto* pair = app.add_subcommand(
        "pair", "pair the gradient against a direction and compare with the FD derivative");
    LagrangianFlags pair_lag;
    std::string pair_path_file, pair_dir_file;
    double pair_fd_step = 1e-5;
    pair_lag.attach(pair);
    pair->add_option("--path", pair_path_file, "input path CSV")->required();
    pair->add_option("--direction", pair_dir_file, "direction CSV (endpoint-vanishing)")
        ->required();
    pair->add_option("--fd-step", pair_fd_step, "central-difference step");

    // descend
    auto* desc = app.add_subcommand("descend", "gradient flow of the action from a CSV path");
    LagrangianFlags desc_lag;
    std::string desc_path_file, desc_out, desc_trace;
    FlowOptions desc_opts;
    bool desc_maximize = false;
    desc_lag.attach(desc);
    desc->add_option("--path", desc_path_file, "start path CSV")->required();
    desc->add_option("--out", desc_out, "output CSV for the final path");
    desc->add_option("--trace", desc_trace, "output CSV for the iteration trace");
    desc->add_option("--tol", desc_opts.tol, "stop when the interior EL sup norm reaches this");
    desc->add_option("--max-iters", desc_opts.max_iters, "iteration budget");
    desc->add_option("--initial-step", desc_opts.initial_step, "first line-search trial step");
    desc->add_option("--max-step", desc_opts.max_step, "cap on line-search trial steps");
    desc->add_flag("--maximize", desc_maximize, "ascend instead of descend");

    // constraint-check
    auto* con = app.add_subcommand("constraint-check",
                                   "constrained Euler-Lagrange check (holonomic or integral)");
    LagrangianFlags con_lag;
    std::string con_path_file, con_g_builtin, con_m_lag, con_out;
    double con_level = 1.0;
    std::optional<double> con_value;
    double con_value_raw = 0.0;
    con_lag.attach(con);
    con->add_option("--path", con_path_file, "input path CSV")->required();
    con->add_option("--g-builtin", con_g_builtin, "holonomic constraint name (sphere)");
    con->add_option("--level", con_level, "holonomic constraint level c");
    con->add_option("--m-lagrangian", con_m_lag, "integral constraint Lagrangian id");
    auto* val_opt = con->add_option("--value", con_value_raw, "integral constraint value c");
    con->add_option("--out", con_out, "output CSV for the constraint report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (scen->parsed()) {
            std::vector<std::string> ids;
            if (scen_all) {
                for (const auto& info : scenario_list()) ids.push_back(info.id);
            } else if (!scen_id.empty()) {
                ids.push_back(scen_id);
            } else {
                std::cerr << "error: give a scenario id or --all; known ids:\n";
                for (const auto& info : scenario_list())
                    std::cerr << "  " << info.id << " - " << info.description << '\n';
                return kUsage;
            }
            std::optional<int> gp;
            if (grid_opt->count() > 0) gp = scen_grid;  // make_grid validates
            return run_scenario_cmd(ids, gp, scen_out, scen_format);
        }
        if (el->parsed()) return run_el_cmd(el_lag, el_path_file, el_out);
        if (pair->parsed())
            return run_pair_cmd(pair_lag, pair_path_file, pair_dir_file, pair_fd_step);
        if (desc->parsed()) {
            if (desc_maximize) desc_opts.direction = FlowDirection::maximize;
            return run_descend_cmd(desc_lag, desc_path_file, desc_out, desc_trace, desc_opts);
        }
        if (con->parsed()) {
            if (val_opt->count() > 0) con_value = con_value_raw;
            return run_constraint_cmd(con_lag, con_path_file, con_g_builtin, con_level,
                                      con_m_lag, con_value, con_out);
        }
    } catch (const GuardError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumerical;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumerical;
    } catch (const CsvError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
