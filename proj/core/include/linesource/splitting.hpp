#pragma once

#include "linesource/greens.hpp"
#include "linesource/line_network.hpp"
#include "linesource/types.hpp"

namespace linesource {

/// A smooth scalar field with its gradient and Laplacian.
struct ScalarField {
    ScalarFn value;
    VectorFn gradient;
    ScalarFn laplacian;

    [[nodiscard]] static ScalarField constant(double c);
    /// c + g . (x - origin)
    [[nodiscard]] static ScalarField affine(double c, const Vec3& g,
                                            const Point& origin = Point::Zero());
    /// a * z^2 + c, the line intensity of the vertical-line study.
    [[nodiscard]] static ScalarField z_quadratic(double a, double c);
};

/// Data of the splitting (u, q) = (u_s, q_s) + (u_r, q_r).
///
/// Segment i contributes the singular term g_i G_i, where G_i is the segment
/// (or infinite-line) kernel and g_i = f * intensity_at(segment i, .) combines
/// the global factor f with the segment's affine intensity.
struct SplitProblem {
    LineNetwork network;
    LineKernelKind kernel = LineKernelKind::segment;
    KernelParams params;
    ScalarField f = ScalarField::constant(1.0);
    ScalarField u0 = ScalarField::constant(0.0);

    void validate() const;
};

/// Value and derivatives of G_i at a point, for one network term.
struct KernelSample {
    double value;
    Vec3 gradient;
};

[[nodiscard]] KernelSample kernel_term(const Point& x, const SplitProblem& p, int segment);

/// u_s = sum_i g_i G_i
[[nodiscard]] double singular_pressure(const Point& x, const SplitProblem& p);
/// q_s = -kappa grad u_s
[[nodiscard]] Vec3 singular_flux(const Point& x, const SplitProblem& p);
/// f_r = kappa sum_i (lap g_i G_i + 2 grad g_i . grad G_i)
[[nodiscard]] double remainder_source(const Point& x, const SplitProblem& p);
/// u_{r,0} = u_0 - u_s, intended for boundary points.
[[nodiscard]] double remainder_boundary(const Point& x, const SplitProblem& p);

struct Reconstruction {
    CellScalarFn pressure;
    CellVectorFn flux;
};

/// Total fields u_s + u_r and q_s + q_r. The returned callables copy `p`.
[[nodiscard]] Reconstruction reconstruct(CellScalarFn remainder_pressure,
                                         CellVectorFn remainder_flux, const SplitProblem& p);

} // namespace linesource
