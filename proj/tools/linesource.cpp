#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "linesource/errors.hpp"
#include "linesource/experiment.hpp"
#include "linesource/line_network.hpp"

using namespace linesource;

namespace {

std::string rate_text(const std::optional<double>& r)
{
    if (!r) {
        return "-";
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", *r);
    return buf;
}

void print_table(const ConvergenceTable& table)
{
    if (table.alpha) {
        std::printf("alpha = %g\n", *table.alpha);
    }
    std::printf("%12s %14s %8s %14s %8s\n", "h", "error_u", "rate_u", "error_q", "rate_q");
    const auto ru = table.rates_u();
    const auto rq = table.rates_q();
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        const std::optional<double> none;
        std::printf("%12.6g %14.6e %8s %14.6e %8s\n", row.h, row.error_u,
                    rate_text(i > 0 ? ru[i - 1] : none).c_str(), row.error_q,
                    rate_text(i > 0 ? rq[i - 1] : none).c_str());
    }
    std::printf("\n");
}

void print_levels(const std::vector<LevelReport>& levels)
{
    std::printf("%6s %9s %9s %12s %12s %10s %10s\n", "n", "cells", "flux_dofs", "residual",
                "conserv", "assembly_s", "solve_s");
    for (const auto& r : levels) {
        std::printf("%6d %9d %9d %12.3e %12.3e %10.2f %10.2f\n", r.n, r.cells, r.flux_dofs,
                    r.relative_residual, r.conservation_defect, r.assembly_seconds,
                    r.solve_seconds);
    }
    std::printf("\n");
}

int run(const ExperimentConfig& cfg)
{
    const auto result = run_experiment(cfg);
    std::printf("preset %s, kappa = %g\n\n", std::string(preset_name(result.preset)).c_str(),
                cfg.kappa);
    if (result.preflight) {
        std::printf("preflight: %d points, max defect %.3e\n\n", result.preflight->points,
                    result.preflight->max_defect);
    }
    for (const auto& t : result.tables) {
        print_table(t);
    }
    print_levels(result.levels);
    for (const auto& f : result.files) {
        std::printf("wrote %s\n", f.string().c_str());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Mixed finite element solver for Poisson problems with line and point sources"};
    app.require_subcommand(1);

    auto* run_cmd = app.add_subcommand("run", "Run a convergence study");
    std::string preset = "exp2_removal_3d";
    std::vector<int> levels;
    std::vector<double> alphas;
    double kappa = 1.0;
    std::string network;
    std::string out;
    bool no_fields = false;
    std::string solver = "auto";
    run_cmd->add_option("--preset", preset, "Study to run")
        ->check(CLI::IsMember(
            {"exp1_standard_2d", "exp2_removal_3d", "network_removal_3d", "custom"}))
        ->capture_default_str();
    run_cmd->add_option("--levels", levels, "Mesh resolutions n, increasing")->delimiter(',');
    run_cmd->add_option("--alpha", alphas, "Weight exponents for exp1_standard_2d")->delimiter(',');
    run_cmd->add_option("--kappa", kappa, "Permeability")->capture_default_str();
    run_cmd->add_option("--network", network, "Network CSV (network_removal_3d, custom)");
    run_cmd->add_option("--out", out, "Output directory for CSV and VTK files");
    run_cmd->add_flag("--no-fields", no_fields, "Skip VTK output");
    run_cmd->add_option("--solver", solver, "auto, direct or minres")
        ->check(CLI::IsMember({"auto", "direct", "minres"}))
        ->capture_default_str();

    auto* gen_cmd = app.add_subcommand("gen-network", "Write the seeded synthetic network");
    std::uint64_t seed = kSyntheticNetworkSeed;
    int count = kSyntheticNetworkSize;
    std::string gen_out;
    gen_cmd->add_option("--seed", seed)->capture_default_str();
    gen_cmd->add_option("--count", count)->capture_default_str();
    gen_cmd->add_option("--out", gen_out, "Output file (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(ErrorCategory::usage);
    }

    try {
        if (*run_cmd) {
            auto cfg = ExperimentConfig::defaults(parse_preset(preset));
            if (!levels.empty()) {
                cfg.levels = levels;
            }
            if (!alphas.empty()) {
                cfg.alphas = alphas;
            }
            cfg.kappa = kappa;
            if (!network.empty()) {
                cfg.network_file = network;
            }
            if (!out.empty()) {
                cfg.output_dir = out;
            }
            cfg.write_fields = !no_fields;
            const std::map<std::string, SolverMethod> methods{
                {"auto", SolverMethod::automatic},
                {"direct", SolverMethod::direct},
                {"minres", SolverMethod::minres}};
            cfg.solver.method = methods.at(solver);
            return run(cfg);
        }
        const auto net = synthetic_network(seed, count);
        if (gen_out.empty()) {
            std::cout << render_network(net);
        } else {
            std::ofstream file(gen_out, std::ios::binary);
            file << render_network(net);
            if (!file) {
                throw IoError("failed writing '" + gen_out + "'");
            }
        }
        return 0;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return static_cast<int>(e.category());
    }
}
