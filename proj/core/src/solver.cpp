#include "linesource/solver.hpp"

#include <chrono>
#include <sstream>
#include <vector>

#include <Eigen/OrderingMethods>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>
#include <unsupported/Eigen/IterativeSolvers>

#include "linesource/errors.hpp"

namespace linesource {

SparseMatrix saddle_matrix(const MixedSystem& system)
{
    const int nq = system.num_flux();
    const int nu = system.num_pressure();
    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(static_cast<std::size_t>(system.A.nonZeros() + 2 * system.B.nonZeros()));
    for (int col = 0; col < system.A.outerSize(); ++col) {
        for (SparseMatrix::InnerIterator it(system.A, col); it; ++it) {
            entries.emplace_back(static_cast<int>(it.row()), col, it.value());
        }
    }
    for (int col = 0; col < system.B.outerSize(); ++col) {
        for (SparseMatrix::InnerIterator it(system.B, col); it; ++it) {
            const int row = nq + static_cast<int>(it.row());
            entries.emplace_back(row, col, -it.value());
            entries.emplace_back(col, row, -it.value());
        }
    }
    SparseMatrix K(nq + nu, nq + nu);
    K.setFromTriplets(entries.begin(), entries.end());
    return K;
}

Eigen::VectorXd saddle_rhs(const MixedSystem& system)
{
    Eigen::VectorXd rhs(system.num_flux() + system.num_pressure());
    rhs << system.g, -system.b;
    return rhs;
}

namespace {

/// diag(A)^-1 on fluxes, (B diag(A)^-1 B^T)^-1 on pressures.
class SaddleBlockPreconditioner {
public:
    using StorageIndex = int;
    enum { ColsAtCompileTime = Eigen::Dynamic, MaxColsAtCompileTime = Eigen::Dynamic };

    void set_flux_size(Eigen::Index n) { nq_ = n; }

    template <class Matrix>
    SaddleBlockPreconditioner& analyzePattern(const Matrix&)
    {
        return *this;
    }

    template <class Matrix>
    SaddleBlockPreconditioner& factorize(const Matrix& K)
    {
        const Eigen::Index n = K.rows();
        const Eigen::Index nu = n - nq_;
        inv_diag_ = Eigen::VectorXd(nq_);
        SparseMatrix Kc = K;
        for (Eigen::Index i = 0; i < nq_; ++i) {
            inv_diag_[i] = 1.0 / Kc.coeff(i, i);
        }
        const SparseMatrix B = Kc.bottomLeftCorner(nu, nq_);
        const SparseMatrix S = B * inv_diag_.asDiagonal() * SparseMatrix(B.transpose());
        schur_.compute(S);
        info_ = schur_.info();
        return *this;
    }

    template <class Matrix>
    SaddleBlockPreconditioner& compute(const Matrix& K)
    {
        return factorize(K);
    }

    [[nodiscard]] Eigen::VectorXd solve(const Eigen::VectorXd& r) const
    {
        Eigen::VectorXd z(r.size());
        z.head(nq_) = inv_diag_.cwiseProduct(r.head(nq_));
        z.tail(r.size() - nq_) = schur_.solve(r.tail(r.size() - nq_));
        return z;
    }

    [[nodiscard]] Eigen::ComputationInfo info() const { return info_; }

private:
    Eigen::Index nq_ = 0;
    Eigen::VectorXd inv_diag_;
    Eigen::SimplicialLDLT<SparseMatrix> schur_;
    Eigen::ComputationInfo info_ = Eigen::Success;
};

double relative_residual(const SparseMatrix& K, const Eigen::VectorXd& x, const Eigen::VectorXd& rhs)
{
    const double r = (K * x - rhs).norm();
    const double scale = rhs.norm();
    return scale > 0.0 ? r / scale : r;
}

} // namespace

SolveReport solve_saddle(const MixedSystem& system, const SolverOptions& options)
{
    const auto start = std::chrono::steady_clock::now();
    const SparseMatrix K = saddle_matrix(system);
    const Eigen::VectorXd rhs = saddle_rhs(system);
    const int n = static_cast<int>(K.rows());

    SolveReport report;
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    const bool direct = options.method == SolverMethod::direct ||
                        (options.method == SolverMethod::automatic && n <= options.direct_limit);

    if (rhs.norm() == 0.0) {
        report.method = direct ? SolverMethod::direct : SolverMethod::minres;
    } else if (direct) {
        report.method = SolverMethod::direct;
        Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
        lu.compute(K);
        if (lu.info() != Eigen::Success) {
            std::ostringstream msg;
            msg << "sparse LU failed on a " << n << "x" << n << " saddle system ("
                << system.num_flux() << " flux, " << system.num_pressure()
                << " pressure unknowns): " << lu.lastErrorMessage();
            throw SolverError(msg.str());
        }
        report.factor_nonzeros = lu.nnzL() + lu.nnzU();
        x = lu.solve(rhs);
        int steps = 0;
        while (steps < options.max_refinement_steps &&
               relative_residual(K, x, rhs) > 0.01 * options.tolerance) {
            x += lu.solve(rhs - K * x);
            ++steps;
        }
        report.iterations = steps;
    } else {
        report.method = SolverMethod::minres;
        Eigen::MINRES<SparseMatrix, Eigen::Lower | Eigen::Upper, SaddleBlockPreconditioner> minres;
        minres.preconditioner().set_flux_size(system.num_flux());
        minres.setMaxIterations(options.max_iterations);
        minres.setTolerance(0.01 * options.tolerance);
        minres.compute(K);
        if (minres.info() != Eigen::Success) {
            throw SolverError("MINRES preconditioner factorization failed");
        }
        x = minres.solve(rhs);
        report.iterations = static_cast<int>(minres.iterations());
    }

    report.relative_residual = relative_residual(K, x, rhs);
    if (!(report.relative_residual <= options.tolerance)) {
        std::ostringstream msg;
        msg << "saddle solve did not reach relative residual " << options.tolerance << " (got "
            << report.relative_residual << " after " << report.iterations << " iterations)";
        throw SolverError(msg.str());
    }
    report.flux = x.head(system.num_flux());
    report.pressure = x.tail(system.num_pressure());
    report.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

} // namespace linesource
