#pragma once

#include <Eigen/Core>

#include "linesource/mesh.hpp"
#include "linesource/quadrature.hpp"
#include "linesource/types.hpp"

namespace linesource {

/// Lowest-order Raviart-Thomas fluxes (one dof per facet, the normal flux
/// along the facet's global normal) paired with piecewise-constant pressures.
///
/// The mesh must outlive the space.
class MixedSpace {
public:
    explicit MixedSpace(const SimplicialMesh& mesh) : mesh_(mesh) {}

    [[nodiscard]] const SimplicialMesh& mesh() const noexcept { return mesh_; }
    [[nodiscard]] int num_flux_dofs() const noexcept { return mesh_.num_facets(); }
    [[nodiscard]] int num_pressure_dofs() const noexcept { return mesh_.num_cells(); }

    /// sign_i (x - p_i) / (d |K|), p_i the vertex opposite local facet i.
    [[nodiscard]] Vec3 rt0_basis_at(int cell, int local, const Point& x) const;
    /// sign_i / |K|
    [[nodiscard]] double rt0_div(int cell, int local) const;

    /// Flux field of a dof vector restricted to one cell.
    [[nodiscard]] Vec3 flux_at(int cell, const Eigen::VectorXd& dofs, const Point& x) const;
    [[nodiscard]] double flux_divergence(int cell, const Eigen::VectorXd& dofs) const;

private:
    const SimplicialMesh& mesh_;
};

/// Rule on facets: 3-point Gauss on edges (2D), 3-point barycentric on triangles (3D).
[[nodiscard]] QuadratureRule facet_rule(int mesh_dim, int order);

/// Calls visit(x, weight) over the quadrature points of facet f; weights sum to its measure.
template <class Visit>
void for_each_facet_point(const SimplicialMesh& mesh, int f, const QuadratureRule& rule,
                          Visit&& visit)
{
    const auto& facet = mesh.facet(f);
    const int nv = mesh.dim();
    const double scale = facet.measure / reference_measure(nv - 1);
    for (std::size_t q = 0; q < rule.size(); ++q) {
        Point x = Point::Zero();
        for (int i = 0; i < nv; ++i) {
            x += rule.points[q][i] * mesh.vertices()[facet.vertices[i]];
        }
        visit(x, rule.weights[q] * scale);
    }
}

/// Canonical RT0 interpolant: dof_f = integral over f of field . n_f.
[[nodiscard]] Eigen::VectorXd interpolate_flux(const VectorFn& field, const MixedSpace& space);

} // namespace linesource
