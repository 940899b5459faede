#pragma once

#include <Eigen/Core>

#include "linesource/assembly.hpp"

namespace linesource {

enum class SolverMethod {
    automatic, ///< direct below SolverOptions::direct_limit unknowns, MINRES above
    direct,    ///< sparse LU of the full block matrix, column fill-reducing ordering
    minres,    ///< MINRES with a block-diagonal preconditioner
};

struct SolverOptions {
    SolverMethod method = SolverMethod::automatic;
    double tolerance = 1e-10;
    int max_iterations = 20000;
    int direct_limit = 20000;
    int max_refinement_steps = 3;
};

struct SolveReport {
    Eigen::VectorXd flux;
    Eigen::VectorXd pressure;
    double relative_residual = 0.0;
    SolverMethod method = SolverMethod::direct;
    int iterations = 0;        ///< MINRES iterations or iterative-refinement steps
    long long factor_nonzeros = 0;
    double seconds = 0.0;
};

/// Symmetric indefinite matrix [[A, -B^T], [-B, 0]].
[[nodiscard]] SparseMatrix saddle_matrix(const MixedSystem& system);
/// Right-hand side [g; -b] matching saddle_matrix.
[[nodiscard]] Eigen::VectorXd saddle_rhs(const MixedSystem& system);

/// Throws SolverError on a failed factorization or when the relative residual
/// stays above options.tolerance.
[[nodiscard]] SolveReport solve_saddle(const MixedSystem& system, const SolverOptions& options = {});

} // namespace linesource
