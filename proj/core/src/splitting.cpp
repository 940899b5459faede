#include "linesource/splitting.hpp"

#include <cmath>

#include "linesource/errors.hpp"

namespace linesource {

ScalarField ScalarField::constant(double c)
{
    return {[c](const Point&) { return c; }, [](const Point&) { return Vec3(Vec3::Zero()); },
            [](const Point&) { return 0.0; }};
}

ScalarField ScalarField::affine(double c, const Vec3& g, const Point& origin)
{
    return {[=](const Point& x) { return c + g.dot(x - origin); },
            [g](const Point&) { return g; }, [](const Point&) { return 0.0; }};
}

ScalarField ScalarField::z_quadratic(double a, double c)
{
    return {[=](const Point& x) { return a * x.z() * x.z() + c; },
            [a](const Point& x) { return Vec3(0.0, 0.0, 2.0 * a * x.z()); },
            [a](const Point&) { return 2.0 * a; }};
}

void SplitProblem::validate() const
{
    params.validate();
    if (!f.value || !f.gradient || !f.laplacian || !u0.value) {
        throw ValidationError("split problem has an unset field");
    }
}

KernelSample kernel_term(const Point& x, const SplitProblem& p, int segment)
{
    const auto& seg = p.network[static_cast<std::size_t>(segment)];
    if (p.kernel == LineKernelKind::infinite_line) {
        return {greens_infinite_line(x, seg.a(), seg.tangent(), p.params, segment),
                greens_infinite_line_gradient(x, seg.a(), seg.tangent(), p.params, segment)};
    }
    return {greens_segment(x, seg, p.params, segment),
            greens_segment_gradient(x, seg, p.params, segment)};
}

namespace {

// g_i = f * f_i with f_i affine along the tangent, so lap f_i = 0.
struct Intensity {
    double value;
    Vec3 gradient;
    double laplacian;
};

Intensity term_intensity(const Point& x, const Segment& seg, double f, const Vec3& grad_f,
                         double lap_f)
{
    const double fi = intensity_at(seg, x);
    const Vec3 grad_fi = seg.intensity_slope() * seg.tangent();
    return {f * fi, grad_f * fi + f * grad_fi, lap_f * fi + 2.0 * grad_f.dot(grad_fi)};
}

} // namespace

double singular_pressure(const Point& x, const SplitProblem& p)
{
    const double f = p.f.value(x);
    double sum = 0.0;
    for (std::size_t i = 0; i < p.network.size(); ++i) {
        const double g = f * intensity_at(p.network[i], x);
        sum += g * kernel_term(x, p, static_cast<int>(i)).value;
    }
    return sum;
}

Vec3 singular_flux(const Point& x, const SplitProblem& p)
{
    const double f = p.f.value(x);
    const Vec3 grad_f = p.f.gradient(x);
    Vec3 sum = Vec3::Zero();
    for (std::size_t i = 0; i < p.network.size(); ++i) {
        const auto g = term_intensity(x, p.network[i], f, grad_f, 0.0);
        const auto G = kernel_term(x, p, static_cast<int>(i));
        sum += g.gradient * G.value + g.value * G.gradient;
    }
    return -p.params.kappa * sum;
}

double remainder_source(const Point& x, const SplitProblem& p)
{
    const double f = p.f.value(x);
    const Vec3 grad_f = p.f.gradient(x);
    const double lap_f = p.f.laplacian(x);
    double sum = 0.0;
    for (std::size_t i = 0; i < p.network.size(); ++i) {
        const auto g = term_intensity(x, p.network[i], f, grad_f, lap_f);
        if (g.laplacian == 0.0 && g.gradient.isZero(0.0)) {
            continue;
        }
        const auto G = kernel_term(x, p, static_cast<int>(i));
        sum += g.laplacian * G.value + 2.0 * g.gradient.dot(G.gradient);
    }
    return p.params.kappa * sum;
}

double remainder_boundary(const Point& x, const SplitProblem& p)
{
    return p.u0.value(x) - singular_pressure(x, p);
}

Reconstruction reconstruct(CellScalarFn remainder_pressure, CellVectorFn remainder_flux,
                           const SplitProblem& p)
{
    return {[p, u_r = std::move(remainder_pressure)](int cell, const Point& x) {
                return singular_pressure(x, p) + u_r(cell, x);
            },
            [p, q_r = std::move(remainder_flux)](int cell, const Point& x) {
                return Vec3(singular_flux(x, p) + q_r(cell, x));
            }};
}

} // namespace linesource
