#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include "linesource/errors.hpp"
#include "linesource/mesh.hpp"
#include "linesource/types.hpp"

namespace linesource {

/// Points in barycentric coordinates on the reference simplex of dimension
/// 1, 2 or 3; weights sum to the reference measure (1, 1/2, 1/6).
struct QuadratureRule {
    int dim = 0;
    int order = 0;
    std::vector<std::array<double, 4>> points;
    std::vector<double> weights;

    [[nodiscard]] std::size_t size() const noexcept { return weights.size(); }
};

[[nodiscard]] double reference_measure(int dim);

/// n-point Gauss-Legendre rule on [0, 1], exact to degree 2n - 1.
[[nodiscard]] QuadratureRule gauss_legendre(int npoints);

/// Positive-weight rule exact for polynomials of degree `order` (orders above
/// the tabulated ones fall back to conical_product_rule).
[[nodiscard]] QuadratureRule simplex_rule(int dim, int order);

/// Collapsed (Duffy) tensor Gauss-Legendre rule with n points per axis.
[[nodiscard]] QuadratureRule conical_product_rule(int dim, int npoints);

/// Uniform red refinement: 2^dim congruent-volume children.
[[nodiscard]] std::vector<std::array<Point, 4>> red_refine(int dim,
                                                           const std::array<Point, 4>& simplex);

/// Evaluates fn(x); if it throws SingularEvaluationError, retries at points
/// nudged toward `interior` (integrable singularities only).
template <class Fn>
double evaluate_guarded(Fn&& fn, const Point& x, const Point& interior)
{
    Point y = x;
    for (int attempt = 0;; ++attempt) {
        try {
            return fn(y);
        } catch (const SingularEvaluationError&) {
            if (attempt == 8) {
                throw;
            }
            y += 1e-9 * (interior - x);
        }
    }
}

/// Quadrature over mesh cells; cells whose distance lower bound to the source
/// set, r(centroid) - centroid_radius, is below their diameter are red-refined
/// `levels` times before the rule is applied.
class CellIntegrator {
public:
    CellIntegrator(const SimplicialMesh& mesh, int order,
                   std::optional<DistanceFn> distance = std::nullopt, int levels = 2);

    [[nodiscard]] bool is_near(int cell) const;
    [[nodiscard]] const SimplicialMesh& mesh() const noexcept { return mesh_; }

    /// Calls visit(x, weight) for every quadrature point of the cell; weights
    /// sum to the cell volume.
    template <class Visit>
    void for_each_point(int cell, Visit&& visit) const
    {
        const int dim = mesh_.dim();
        const auto root = mesh_.cell_points(cell);
        std::vector<std::array<Point, 4>> pieces{root};
        if (is_near(cell)) {
            for (int l = 0; l < levels_; ++l) {
                std::vector<std::array<Point, 4>> next;
                next.reserve(pieces.size() << dim);
                for (const auto& s : pieces) {
                    for (auto& c : red_refine(dim, s)) {
                        next.push_back(c);
                    }
                }
                pieces = std::move(next);
            }
        }
        const double scale = mesh_.volume(cell) / (reference_measure(dim) * pieces.size());
        for (const auto& s : pieces) {
            for (std::size_t q = 0; q < rule_.size(); ++q) {
                Point x = Point::Zero();
                for (int i = 0; i <= dim; ++i) {
                    x += rule_.points[q][i] * s[i];
                }
                visit(x, rule_.weights[q] * scale);
            }
        }
    }

    /// Integral of fn over the cell, with singular evaluations nudged inward.
    template <class Fn>
    double integrate(int cell, Fn&& fn) const
    {
        double sum = 0.0;
        const Point& c = mesh_.centroid(cell);
        for_each_point(cell, [&](const Point& x, double w) {
            sum += w * evaluate_guarded(fn, x, c);
        });
        return sum;
    }

private:
    const SimplicialMesh& mesh_;
    QuadratureRule rule_;
    std::vector<char> near_;
    int levels_;
};

} // namespace linesource
