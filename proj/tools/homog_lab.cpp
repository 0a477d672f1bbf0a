// homog_lab: periodic-homogenization laboratory CLI.
//
// Subcommands: cell, solve, approx, doubling, nodal, sweep. Every subcommand
// reads an experiment config (JSON) and writes CSV/JSON reports into the
// output directory; --dump-fields adds grid dumps of the computed fields.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "homog/errors.hpp"
#include "homog/harness.hpp"

namespace fs = std::filesystem;
using namespace homog;

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_override;
    double eps_override = 0.0;
    bool quiet = false;
    bool dump_fields = false;
    int jobs = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "experiment config (JSON)")->required();
    cmd->add_option("--out", args.out_override, "output directory (overrides config)");
    cmd->add_option("--eps", args.eps_override, "run a single epsilon instead of the list");
    cmd->add_flag("--quiet", args.quiet, "suppress progress output");
    cmd->add_flag("--dump-fields", args.dump_fields, "write grid dumps of computed fields");
    cmd->add_option("--jobs", args.jobs, "parallel epsilon tasks (default HOMOG_LAB_JOBS or 1)");
}

ExperimentConfig prepare(const CommonArgs& args, const std::vector<std::string>& analyses) {
    ExperimentConfig cfg = load_config(args.config_path);
    if (!args.out_override.empty()) cfg.out_dir = args.out_override;
    if (args.eps_override > 0.0) cfg.eps_list = {args.eps_override};
    if (!analyses.empty()) cfg.analyses = analyses;
    cfg.validate();
    return cfg;
}

int run_cell(const CommonArgs& args) {
    ExperimentConfig cfg = prepare(args, {"cell"});
    const CoefficientField field = cfg.family.make();
    const ValidationReport vr = field.validate(256);
    const CorrectorSet chi = solve_cell(field, cfg.cell_n, cfg.cell_tol);
    const HomogenizedTensor ah = homogenized(field, chi);
    const FluxMatrix b = flux_field(field, chi, ah);
    const FluxCorrector phi = flux_corrector(b, cfg.cell_tol);

    fs::create_directories(cfg.out_dir);
    nlohmann::json j;
    j["a11"] = ah.a_hat.a11;
    j["a12"] = ah.a_hat.a12;
    j["a22"] = ah.a_hat.a22;
    j["lambda_hat_min"] = ah.lambda_hat_min;
    j["lambda_hat_max"] = ah.lambda_hat_max;
    j["cell_residual"] = chi.residual_norm;
    j["flux_divergence_residual"] = phi.divergence_residual;
    j["lambda_min"] = vr.lambda_min;
    j["lambda_max"] = vr.lambda_max;
    j["lipschitz_estimate"] = vr.lipschitz_estimate;
    j["periodicity_residual"] = vr.periodicity_residual;
    std::ofstream(cfg.out_dir + "/a_hat.json") << j.dump(2) << "\n";

    std::ofstream c1(cfg.out_dir + "/chi1.txt"), c2(cfg.out_dir + "/chi2.txt");
    chi.chi1.dump(c1);
    chi.chi2.dump(c2);
    if (args.dump_fields) {
        for (int i = 0; i < 2; ++i)
            for (int k = 0; k < 2; ++k) {
                std::ofstream os(cfg.out_dir + "/b" + std::to_string(i + 1) +
                                 std::to_string(k + 1) + ".txt");
                b.b(i, k).dump(os);
            }
        std::ofstream p1(cfg.out_dir + "/phi121.txt"), p2(cfg.out_dir + "/phi122.txt");
        phi.phi12[0].dump(p1);
        phi.phi12[1].dump(p2);
    }
    if (!args.quiet)
        std::cout << "cell: a_hat = [" << ah.a_hat.a11 << ", " << ah.a_hat.a12 << "; "
                  << ah.a_hat.a12 << ", " << ah.a_hat.a22
                  << "], flux residual = " << phi.divergence_residual << "\n";
    return 0;
}

int run_solve(const CommonArgs& args) {
    ExperimentConfig cfg = prepare(args, {});
    const CoefficientField field = cfg.family.make();
    fs::create_directories(cfg.out_dir);
    nlohmann::json rows = nlohmann::json::array();
    for (size_t k = 0; k < cfg.eps_list.size(); ++k) {
        const double eps = cfg.eps_list[k];
        const BoxGrid grid = cfg.grid_for(eps);
        const DiscreteField u =
            solve_dirichlet(field, eps, grid, cfg.boundary.make(), nullptr, cfg.solver_tol);
        rows.push_back({{"eps", eps}, {"m", grid.m}, {"h", grid.spacing()}});
        if (args.dump_fields) {
            std::ofstream os(cfg.out_dir + "/u_eps_" + std::to_string(k) + ".txt");
            u.dump(os);
        }
        if (!args.quiet)
            std::cout << "solve: eps = " << eps << " on " << grid.m << "^2 nodes\n";
    }
    std::ofstream(cfg.out_dir + "/solve.json") << rows.dump(2) << "\n";
    return 0;
}

int run_subset(const CommonArgs& args, const std::vector<std::string>& analyses) {
    ExperimentConfig cfg = prepare(args, analyses);
    const int jobs = args.jobs > 0 ? args.jobs : jobs_from_env();
    const SweepReport rep = run_sweep(cfg, jobs, args.dump_fields ? cfg.out_dir : std::string{});
    write_sweep_outputs(rep, cfg.out_dir, args.dump_fields);
    if (!args.quiet) {
        for (const auto& r : rep.rows)
            std::cout << "eps = " << r.eps << (r.ok ? " ok" : (" FAILED: " + r.error)) << " ("
                      << r.wall_ms / 1000.0 << " s)\n";
    }
    return rep.all_ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"periodic homogenization laboratory"};
    app.require_subcommand(1);

    CommonArgs args;
    auto* cell = app.add_subcommand("cell", "unit-cell problems and homogenized tensor");
    auto* solve = app.add_subcommand("solve", "oscillating-coefficient Dirichlet solves");
    auto* approx = app.add_subcommand("approx", "homogenization error reports");
    auto* doubling = app.add_subcommand("doubling", "doubling profiles over balls and ellipsoids");
    auto* nodal = app.add_subcommand("nodal", "nodal set extraction and densities");
    auto* sweep = app.add_subcommand("sweep", "full epsilon sweep with all enabled analyses");
    for (auto* c : {cell, solve, approx, doubling, nodal, sweep}) add_common(c, args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return 0;  // --help
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (cell->parsed()) return run_cell(args);
        if (solve->parsed()) return run_solve(args);
        if (approx->parsed()) return run_subset(args, {"approx"});
        if (doubling->parsed()) return run_subset(args, {"doubling"});
        if (nodal->parsed()) return run_subset(args, {"nodal"});
        if (sweep->parsed()) return run_subset(args, {});
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
