#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "linesource/femspace.hpp"
#include "linesource/line_network.hpp"
#include "linesource/types.hpp"

namespace linesource {

enum class Quantity { pressure, flux };

/// Error in the weighted norm (integral of r^(2 alpha) |err|^2)^(1/2).
struct ErrorSpec {
    double alpha = 0.0; ///< in [-1, 2]
    Quantity quantity = Quantity::pressure;
    /// CellScalarFn for pressure, CellVectorFn for flux.
    std::variant<CellScalarFn, CellVectorFn> reference;

    void validate() const;
};

struct DiscreteSolution {
    Eigen::VectorXd flux;
    Eigen::VectorXd pressure;
};

struct NormOptions {
    int order = 4;
    int levels = 2; ///< red refinements of cells near the source set
    double floor_radius = 1e-12;
};

/// sqrt(sum_K integral_K r^(2 alpha) * squared(K, x)); r is clamped below at floor_radius.
[[nodiscard]] double weighted_norm(const SimplicialMesh& mesh, const CellScalarFn& squared,
                                   double alpha, const DistanceFn& distance,
                                   const NormOptions& options = {});

[[nodiscard]] double weighted_error(const MixedSpace& space, const DiscreteSolution& solution,
                                    const ErrorSpec& spec, const DistanceFn& distance,
                                    const NormOptions& options = {});
[[nodiscard]] double weighted_error(const MixedSpace& space, const DiscreteSolution& solution,
                                    const ErrorSpec& spec, const LineNetwork& net,
                                    const NormOptions& options = {});

/// Unweighted L2 error of the cellwise-constant divergence of the flux.
[[nodiscard]] double divergence_error(const MixedSpace& space, const Eigen::VectorXd& flux,
                                      const ScalarFn& exact_divergence,
                                      const DistanceFn& distance,
                                      const NormOptions& options = {});

/// s_i = log2(e_i / e_{i+1}); nullopt where an error is zero or non-finite.
[[nodiscard]] std::vector<std::optional<double>> observed_rates(std::span<const double> errors);

struct ConvergenceRow {
    double h;
    double error_u;
    double error_q;
};

struct ConvergenceTable {
    std::optional<double> alpha;
    std::vector<ConvergenceRow> rows;

    [[nodiscard]] std::vector<double> errors_u() const;
    [[nodiscard]] std::vector<double> errors_q() const;
    [[nodiscard]] std::vector<std::optional<double>> rates_u() const;
    [[nodiscard]] std::vector<std::optional<double>> rates_q() const;
    /// Throws ValidationError unless h halves from row to row.
    void validate() const;
};

/// `h,error_u,rate_u,error_q,rate_q[,alpha]`, 6 significant digits, empty rate in the first row.
[[nodiscard]] std::string to_csv(const ConvergenceTable& table);

/// `h,error_<name>,rate_<name>` for a single error series.
[[nodiscard]] std::string series_to_csv(const std::string& name, std::span<const double> h,
                                        std::span<const double> errors);

} // namespace linesource
