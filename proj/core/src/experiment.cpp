#include "linesource/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <random>
#include <sstream>

#include "linesource/assembly.hpp"
#include "linesource/errors.hpp"
#include "linesource/mesh.hpp"
#include "linesource/quadrature.hpp"
#include "linesource/vtk.hpp"

namespace linesource {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string format_number(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text,
                std::vector<std::filesystem::path>& files)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out << text;
    out.flush();
    if (!out) {
        throw IoError("failed writing '" + path.string() + "'");
    }
    files.push_back(path);
}

std::string solver_name(SolverMethod m)
{
    switch (m) {
    case SolverMethod::automatic:
        return "automatic";
    case SolverMethod::direct:
        return "direct";
    case SolverMethod::minres:
        return "minres";
    }
    return "unknown";
}

double conservation_defect(const MixedSystem& sys, const Eigen::VectorXd& flux)
{
    const Eigen::VectorXd defect = sys.B * flux - sys.b;
    const double scale = sys.b.lpNorm<Eigen::Infinity>();
    const double worst = defect.lpNorm<Eigen::Infinity>();
    return scale > 0.0 ? worst / scale : worst;
}

/// Cell averages of the discrete pressure and of the flux field.
struct CellFields {
    std::vector<double> u;
    std::vector<Vec3> q;
};

CellFields discrete_fields(const MixedSpace& space, const SolveReport& sol)
{
    const auto& mesh = space.mesh();
    CellFields out;
    out.u.assign(sol.pressure.data(), sol.pressure.data() + sol.pressure.size());
    out.q.resize(mesh.num_cells());
    for (int k = 0; k < mesh.num_cells(); ++k) {
        out.q[k] = space.flux_at(k, sol.flux, mesh.centroid(k));
    }
    return out;
}

/// Adds the cell averages of u_s and q_s to the remainder fields.
CellFields total_fields(const MixedSpace& space, const CellFields& remainder, const SplitProblem& p)
{
    const auto& mesh = space.mesh();
    const CellIntegrator integrator(mesh, 2);
    CellFields out = remainder;
    for (int k = 0; k < mesh.num_cells(); ++k) {
        const double vol = mesh.volume(k);
        out.u[k] += integrator.integrate(k, [&](const Point& x) { return singular_pressure(x, p); }) / vol;
        for (int i = 0; i < 3; ++i) {
            out.q[k][i] +=
                integrator.integrate(k, [&](const Point& x) { return singular_flux(x, p)[i]; }) / vol;
        }
    }
    return out;
}

struct LevelContext {
    Preset preset;
    int n;
};

std::string context_label(const LevelContext& c)
{
    return std::string(preset_name(c.preset)) + ", level n=" + std::to_string(c.n);
}

std::filesystem::path level_file(const std::filesystem::path& dir, Preset preset, int n,
                                 const std::string& suffix)
{
    return dir / (std::string(preset_name(preset)) + "_n" + std::to_string(n) + suffix);
}

LevelReport base_report(const MixedSpace& space, int n, const MixedSystem& sys,
                        const SolveReport& sol)
{
    LevelReport r;
    r.n = n;
    r.h = space.mesh().h();
    r.cells = space.mesh().num_cells();
    r.flux_dofs = space.num_flux_dofs();
    r.method = sol.method;
    r.iterations = sol.iterations;
    r.relative_residual = sol.relative_residual;
    r.conservation_defect = conservation_defect(sys, sol.flux);
    r.solve_seconds = sol.seconds;
    return r;
}

ExperimentResult run_point_source(const ExperimentConfig& cfg)
{
    const ManufacturedCase c = point_source_case(cfg.kappa);
    ExperimentResult result;
    result.preset = cfg.preset;
    for (double a : cfg.alphas) {
        result.tables.push_back(ConvergenceTable{a, {}});
    }

    for (int n : cfg.levels) {
        const LevelContext ctx{cfg.preset, n};
        try {
            const auto t0 = Clock::now();
            const auto mesh = build_box_mesh(2, Point::Zero(), Point(1.0, 1.0, 0.0), n);
            const MixedSpace space(mesh);
            auto blocks = assemble_darcy(space, cfg.kappa);
            MixedSystem sys{std::move(blocks.A), std::move(blocks.B),
                            assemble_boundary_term(space, c.u),
                            assemble_source_point(space, c.source_point, c.source_intensity) +
                                assemble_source_regular(space, c.background, c.distance)};
            const double assembly = seconds_since(t0);

            const SolveReport sol = solve_saddle(sys, cfg.solver);
            LevelReport report = base_report(space, n, sys, sol);
            report.assembly_seconds = assembly;

            const auto t1 = Clock::now();
            const DiscreteSolution discrete{sol.flux, sol.pressure};
            std::vector<std::future<ConvergenceRow>> jobs;
            for (double a : cfg.alphas) {
                jobs.push_back(std::async(std::launch::async, [&, a] {
                    const ErrorSpec eu{a, Quantity::pressure, ignore_cell(c.u)};
                    const ErrorSpec eq{a, Quantity::flux, ignore_cell(c.q)};
                    return ConvergenceRow{mesh.h(),
                                          weighted_error(space, discrete, eu, c.distance),
                                          weighted_error(space, discrete, eq, c.distance)};
                }));
            }
            for (std::size_t i = 0; i < jobs.size(); ++i) {
                result.tables[i].rows.push_back(jobs[i].get());
            }
            report.error_seconds = seconds_since(t1);
            result.levels.push_back(report);

            if (cfg.output_dir && cfg.write_fields) {
                const auto fields = discrete_fields(space, sol);
                const auto path = level_file(*cfg.output_dir, cfg.preset, n, ".vtk");
                write_vtk(path, mesh, fields.u, fields.q, context_label(ctx));
                result.files.push_back(path);
            }
        } catch (const Error& e) {
            rethrow_with_context(e, context_label(ctx));
        }
    }

    if (cfg.output_dir) {
        for (const auto& table : result.tables) {
            const auto name = std::string(preset_name(cfg.preset)) + "_alpha_" +
                              format_number(*table.alpha) + ".csv";
            write_text(*cfg.output_dir / name, to_csv(table), result.files);
        }
    }
    return result;
}

struct RemovalSetup {
    SplitProblem split;
    std::optional<ManufacturedCase> manufactured;
};

RemovalSetup removal_setup(const ExperimentConfig& cfg)
{
    switch (cfg.preset) {
    case Preset::exp2_removal_3d: {
        auto c = vertical_line_case(cfg.kappa);
        auto split = *c.split;
        return {std::move(split), std::move(c)};
    }
    case Preset::network_removal_3d: {
        const LineNetwork net =
            cfg.network_file ? load_network(*cfg.network_file)
                             : synthetic_network(kSyntheticNetworkSeed, kSyntheticNetworkSize);
        auto c = network_case(net, cfg.kappa);
        auto split = *c.split;
        return {std::move(split), std::move(c)};
    }
    case Preset::custom: {
        SplitProblem split{load_network(*cfg.network_file), LineKernelKind::segment,
                           KernelParams::for_domain(cfg.kappa, std::sqrt(3.0)),
                           ScalarField::constant(1.0), ScalarField::constant(0.0)};
        return {std::move(split), std::nullopt};
    }
    case Preset::exp1_standard_2d:
        break;
    }
    throw ValidationError("preset has no removal formulation");
}

ExperimentResult run_removal(const ExperimentConfig& cfg)
{
    ExperimentResult result;
    result.preset = cfg.preset;
    const RemovalSetup setup = [&cfg] {
        try {
            return removal_setup(cfg);
        } catch (const Error& e) {
            rethrow_with_context(e, std::string(preset_name(cfg.preset)));
        }
    }();
    const SplitProblem& split = setup.split;
    const auto& mc = setup.manufactured;

    if (mc) {
        result.preflight = preflight_check(*mc);
        if (!(result.preflight->max_defect <= kPreflightTolerance)) {
            throw ValidationError(std::string(preset_name(cfg.preset)) +
                                  ": remainder source does not match the closed-form "
                                  "remainder (max defect " +
                                  format_number(result.preflight->max_defect) + ")");
        }
        result.tables.push_back(ConvergenceTable{std::nullopt, {}});
    }
    const DistanceFn distance = [&split](const Point& x) {
        return distance_to_network(x, split.network);
    };
    const ScalarFn background = mc ? mc->background : ScalarFn{};

    for (int n : cfg.levels) {
        const LevelContext ctx{cfg.preset, n};
        try {
            const auto t0 = Clock::now();
            const auto mesh = build_box_mesh(3, Point::Zero(), Point::Ones(), n);
            const MixedSpace space(mesh);
            const MixedSystem sys = assemble_removal_system(space, split, background);
            const double assembly = seconds_since(t0);

            const SolveReport sol = solve_saddle(sys, cfg.solver);
            LevelReport report = base_report(space, n, sys, sol);
            report.assembly_seconds = assembly;

            if (mc) {
                const auto t1 = Clock::now();
                const DiscreteSolution discrete{sol.flux, sol.pressure};
                const ErrorSpec eu{0.0, Quantity::pressure, ignore_cell(mc->remainder_u)};
                const ErrorSpec eq{0.0, Quantity::flux, ignore_cell(mc->remainder_q)};
                result.tables[0].rows.push_back(
                    ConvergenceRow{mesh.h(), weighted_error(space, discrete, eu, distance),
                                   weighted_error(space, discrete, eq, distance)});
                report.error_divergence =
                    divergence_error(space, sol.flux, mc->remainder_divergence, distance);

                const auto total = reconstruct(
                    [&sol](int k, const Point&) { return sol.pressure[k]; },
                    [&space, &sol](int k, const Point& x) { return space.flux_at(k, sol.flux, x); },
                    split);
                report.error_total_u = weighted_norm(
                    mesh,
                    [&](int k, const Point& x) {
                        const double e = mc->u(x) - total.pressure(k, x);
                        return e * e;
                    },
                    0.25, distance);
                report.error_seconds = seconds_since(t1);
            }
            result.levels.push_back(report);

            if (cfg.output_dir && cfg.write_fields) {
                const auto fields = discrete_fields(space, sol);
                auto path = level_file(*cfg.output_dir, cfg.preset, n, ".vtk");
                write_vtk(path, mesh, fields.u, fields.q, context_label(ctx) + " remainder");
                result.files.push_back(path);
                const auto totals = total_fields(space, fields, split);
                path = level_file(*cfg.output_dir, cfg.preset, n, "_total.vtk");
                write_vtk(path, mesh, totals.u, totals.q, context_label(ctx) + " total");
                result.files.push_back(path);
            }
        } catch (const Error& e) {
            rethrow_with_context(e, context_label(ctx));
        }
    }

    if (cfg.output_dir) {
        const std::string stem = std::string(preset_name(cfg.preset));
        if (mc) {
            write_text(*cfg.output_dir / (stem + ".csv"), to_csv(result.tables[0]), result.files);
            std::vector<double> h;
            std::vector<double> div;
            std::vector<double> tot;
            for (const auto& r : result.levels) {
                h.push_back(r.h);
                div.push_back(*r.error_divergence);
                tot.push_back(*r.error_total_u);
            }
            write_text(*cfg.output_dir / (stem + "_div.csv"), series_to_csv("div", h, div),
                       result.files);
            write_text(*cfg.output_dir / (stem + "_total.csv"), series_to_csv("u_total", h, tot),
                       result.files);
        }
    }
    return result;
}

} // namespace

std::string_view preset_name(Preset preset)
{
    switch (preset) {
    case Preset::exp1_standard_2d:
        return "exp1_standard_2d";
    case Preset::exp2_removal_3d:
        return "exp2_removal_3d";
    case Preset::network_removal_3d:
        return "network_removal_3d";
    case Preset::custom:
        return "custom";
    }
    return "unknown";
}

Preset parse_preset(std::string_view name)
{
    for (Preset p : {Preset::exp1_standard_2d, Preset::exp2_removal_3d,
                     Preset::network_removal_3d, Preset::custom}) {
        if (preset_name(p) == name) {
            return p;
        }
    }
    throw ValidationError("unknown preset '" + std::string(name) + "'");
}

ExperimentConfig ExperimentConfig::defaults(Preset preset)
{
    ExperimentConfig cfg;
    cfg.preset = preset;
    switch (preset) {
    case Preset::exp1_standard_2d:
        cfg.levels = {16, 32, 64, 128};
        cfg.alphas = {0.0, 0.5, 1.0};
        break;
    case Preset::exp2_removal_3d:
    case Preset::custom:
        cfg.levels = {4, 8, 16};
        break;
    case Preset::network_removal_3d:
        cfg.levels = {2, 4, 8, 16};
        break;
    }
    return cfg;
}

void ExperimentConfig::validate() const
{
    if (levels.empty()) {
        throw ValidationError("at least one refinement level is required");
    }
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (levels[i] < 1) {
            throw ValidationError("refinement levels must be positive");
        }
        if (i > 0 && levels[i] <= levels[i - 1]) {
            throw ValidationError("refinement levels must be increasing");
        }
    }
    if (!(kappa > 0.0) || !std::isfinite(kappa)) {
        throw ValidationError("kappa must be positive");
    }
    if (preset == Preset::exp1_standard_2d) {
        if (alphas.empty()) {
            throw ValidationError("the point-source study needs at least one alpha");
        }
        for (double a : alphas) {
            if (!(a >= -1.0 && a <= 2.0)) {
                throw ValidationError("weight exponent alpha must lie in [-1, 2]");
            }
        }
    }
    if (preset == Preset::custom && !network_file) {
        throw ValidationError("the custom preset needs a network file");
    }
    if (output_dir && !std::filesystem::is_directory(*output_dir)) {
        throw IoError("output directory '" + output_dir->string() + "' does not exist");
    }
}

PreflightReport preflight_check(const ManufacturedCase& c, int points, double min_distance,
                                std::uint64_t seed)
{
    if (!c.split || !c.remainder_q || !c.background) {
        throw ValidationError("preflight needs a removal case with a closed-form remainder");
    }
    std::mt19937_64 rng(seed);
    const auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    const double h = 1e-3;
    PreflightReport report;
    while (report.points < points) {
        const Point x(unit(), unit(), c.dim == 3 ? unit() : 0.0);
        if (c.distance(x) < min_distance) {
            continue;
        }
        double div = 0.0;
        for (int i = 0; i < c.dim; ++i) {
            Vec3 e = Vec3::Zero();
            e[i] = h;
            div += (-c.remainder_q(x + 2 * e)[i] + 8 * c.remainder_q(x + e)[i] -
                    8 * c.remainder_q(x - e)[i] + c.remainder_q(x - 2 * e)[i]) /
                   (12 * h);
        }
        const double rhs = remainder_source(x, *c.split) + c.background(x);
        report.max_defect =
            std::max(report.max_defect, std::abs(div - rhs) / std::max(1.0, std::abs(rhs)));
        ++report.points;
    }
    return report;
}

ExperimentResult run_experiment(const ExperimentConfig& config)
{
    config.validate();
    auto result = config.preset == Preset::exp1_standard_2d ? run_point_source(config)
                                                            : run_removal(config);
    if (config.output_dir) {
        write_text(*config.output_dir / (std::string(preset_name(config.preset)) + "_levels.csv"),
                   levels_to_csv(result.levels), result.files);
    }
    return result;
}

std::string levels_to_csv(const std::vector<LevelReport>& levels)
{
    std::ostringstream out;
    out << "n,h,cells,flux_dofs,solver,relative_residual,conservation_defect\n";
    char buf[128];
    for (const auto& r : levels) {
        std::snprintf(buf, sizeof(buf), "%d,%.6g,%d,%d,%s,%.6g,%.6g\n", r.n, r.h, r.cells,
                      r.flux_dofs, solver_name(r.method).c_str(), r.relative_residual,
                      r.conservation_defect);
        out << buf;
    }
    return out.str();
}

} // namespace linesource
