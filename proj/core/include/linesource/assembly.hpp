#pragma once

#include <optional>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "linesource/femspace.hpp"
#include "linesource/line_network.hpp"
#include "linesource/splitting.hpp"
#include "linesource/types.hpp"

namespace linesource {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Blocks of the RT0 x DG0 discretization
///   (A q, v) - (B^T u, v) = g,   B q = b
/// with A_ij = (kappa^-1 phi_j, phi_i) and B_kj = (div phi_j, 1)_K.
struct MixedSystem {
    SparseMatrix A;
    SparseMatrix B;
    Eigen::VectorXd g;
    Eigen::VectorXd b;

    [[nodiscard]] int num_flux() const { return static_cast<int>(A.rows()); }
    [[nodiscard]] int num_pressure() const { return static_cast<int>(B.rows()); }
};

struct DarcyBlocks {
    SparseMatrix A;
    SparseMatrix B;
};

/// Exact (order-2 quadrature) flux mass matrix and cellwise divergence block.
[[nodiscard]] DarcyBlocks assemble_darcy(const MixedSpace& space, double kappa);

/// g_f = -integral over f of trace * (phi_f . n) for boundary facets, 0 elsewhere.
[[nodiscard]] Eigen::VectorXd assemble_boundary_term(const MixedSpace& space,
                                                     const ScalarFn& trace);

/// b_K = integral over K of source, order 4; cells near the source set are
/// red-refined `levels` times for the quadrature only.
[[nodiscard]] Eigen::VectorXd assemble_source_regular(const MixedSpace& space,
                                                      const ScalarFn& source,
                                                      std::optional<DistanceFn> refine_near,
                                                      int levels = 2);
[[nodiscard]] Eigen::VectorXd assemble_source_regular(const MixedSpace& space,
                                                      const ScalarFn& source,
                                                      const LineNetwork& refine_near,
                                                      int levels = 2);

/// b_K = sum over pieces of the network inside K of the integral of the
/// segment intensity (times `scale`), 2-point Gauss per piece.
[[nodiscard]] Eigen::VectorXd assemble_source_line(const MixedSpace& space,
                                                   const LineNetwork& net,
                                                   const ScalarFn& scale = {});

/// Point source of the given intensity in the lowest-index cell containing x0.
[[nodiscard]] Eigen::VectorXd assemble_source_point(const MixedSpace& space, const Point& x0,
                                                    double intensity);

/// Remainder problem of the splitting: boundary data u_{r,0}, source f_r
/// (plus an optional background volume source).
[[nodiscard]] MixedSystem assemble_removal_system(const MixedSpace& space, const SplitProblem& p,
                                                  const ScalarFn& background = {});

} // namespace linesource
