#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "linesource/analysis.hpp"
#include "linesource/manufactured.hpp"
#include "linesource/solver.hpp"

namespace linesource {

enum class Preset { exp1_standard_2d, exp2_removal_3d, network_removal_3d, custom };

[[nodiscard]] std::string_view preset_name(Preset preset);
/// Throws ValidationError on an unknown name.
[[nodiscard]] Preset parse_preset(std::string_view name);

struct ExperimentConfig {
    Preset preset = Preset::exp2_removal_3d;
    std::vector<int> levels;
    /// Weight exponents of the point-source study; ignored by the removal presets.
    std::vector<double> alphas;
    double kappa = 1.0;
    /// Required by `custom`; `network_removal_3d` falls back to the seeded synthetic network.
    std::optional<std::filesystem::path> network_file;
    /// Nothing is written when unset.
    std::optional<std::filesystem::path> output_dir;
    bool write_fields = true;
    SolverOptions solver;

    /// Levels, weights and kappa = 1 as used by the published study of each preset.
    [[nodiscard]] static ExperimentConfig defaults(Preset preset);
    void validate() const;
};

struct LevelReport {
    int n = 0;
    double h = 0.0;
    int cells = 0;
    int flux_dofs = 0;
    SolverMethod method = SolverMethod::direct;
    int iterations = 0;
    double relative_residual = 0.0;
    /// max_K |(div q_h, 1)_K - b_K| / max_K |b_K|
    double conservation_defect = 0.0;
    /// Removal presets with a closed-form solution only.
    std::optional<double> error_divergence;
    /// || u - (u_s + u_{r,h}) || in L2 with weight exponent 0.25.
    std::optional<double> error_total_u;
    double assembly_seconds = 0.0;
    double solve_seconds = 0.0;
    double error_seconds = 0.0;
};

struct PreflightReport {
    int points = 0;
    /// max |div q_r (finite differences) - (f_r + background)| / max(1, |f_r + background|)
    double max_defect = 0.0;
};

struct ExperimentResult {
    Preset preset = Preset::exp2_removal_3d;
    /// One table per alpha for the point-source study, one remainder table for
    /// the manufactured removal presets, none for `custom`.
    std::vector<ConvergenceTable> tables;
    std::vector<LevelReport> levels;
    std::optional<PreflightReport> preflight;
    std::vector<std::filesystem::path> files;
};

constexpr double kPreflightTolerance = 1e-3;
constexpr std::uint64_t kPreflightSeed = 7;

/// Compares a central-difference divergence of the closed-form remainder flux
/// with remainder_source + background at seeded points at least
/// `min_distance` from the sources. Requires a removal case.
[[nodiscard]] PreflightReport preflight_check(const ManufacturedCase& c, int points = 50,
                                              double min_distance = 0.05,
                                              std::uint64_t seed = kPreflightSeed);

/// Runs every level of the preset in order. Errors from any stage are
/// rethrown with the preset and level prepended.
[[nodiscard]] ExperimentResult run_experiment(const ExperimentConfig& config);

/// `n,h,cells,flux_dofs,solver,relative_residual,conservation_defect`
[[nodiscard]] std::string levels_to_csv(const std::vector<LevelReport>& levels);

} // namespace linesource
