#include "linesource/manufactured.hpp"

#include <cmath>
#include <numbers>

#include "linesource/greens.hpp"

namespace linesource {

namespace {

constexpr double kPi = std::numbers::pi;

/// In-plane offset from the vertical axis through (0.5, 0.5).
Vec3 planar_offset(const Point& x)
{
    return {x.x() - 0.5, x.y() - 0.5, 0.0};
}

/// r^2 (1 - ln r) / (4 pi) and its gradient, r measured in the plane.
double smooth_radial(double r)
{
    return r * r * (1.0 - std::log(r)) / (4.0 * kPi);
}

Vec3 smooth_radial_gradient(const Vec3& offset)
{
    const double r = offset.norm();
    return (1.0 - 2.0 * std::log(r)) / (4.0 * kPi) * offset;
}

} // namespace

ManufacturedCase point_source_case(double kappa)
{
    ManufacturedCase c;
    c.name = "point_source_2d";
    c.dim = 2;
    c.kappa = kappa;
    c.source_point = Point(0.5, 0.5, 0.0);
    c.source_intensity = 2.0;
    const double strength = c.source_intensity / (2.0 * kPi * kappa);
    c.u = [strength](const Point& x) {
        const double r = planar_offset(x).norm();
        return -strength * std::log(r) + smooth_radial(r);
    };
    c.q = [strength, kappa](const Point& x) {
        const Vec3 d = planar_offset(x);
        const Vec3 grad = -strength * d / d.squaredNorm() + smooth_radial_gradient(d);
        return Vec3(-kappa * grad);
    };
    // -kappa lap(r^2 (1 - ln r) / 4 pi) = kappa ln(r) / pi in 2D
    c.background = [kappa](const Point& x) {
        return kappa * std::log(planar_offset(x).norm()) / kPi;
    };
    c.distance = [](const Point& x) { return planar_offset(x).norm(); };
    return c;
}

ManufacturedCase vertical_line_case(double kappa)
{
    ManufacturedCase c;
    c.name = "vertical_line_3d";
    c.dim = 3;
    c.kappa = kappa;

    SplitProblem split{LineNetwork({Segment(Point(0.5, 0.5, 0.0), Point(0.5, 0.5, 1.0))}),
                       LineKernelKind::infinite_line,
                       KernelParams::for_domain(kappa, std::sqrt(3.0)),
                       ScalarField::z_quadratic(1.0, 1.0), ScalarField::constant(0.0)};

    c.remainder_u = [](const Point& x) { return smooth_radial(planar_offset(x).norm()); };
    c.remainder_q = [kappa](const Point& x) {
        return Vec3(-kappa * smooth_radial_gradient(planar_offset(x)));
    };
    c.remainder_divergence = [kappa](const Point& x) {
        return kappa * std::log(planar_offset(x).norm()) / kPi;
    };

    c.u = [kappa](const Point& x) {
        const double r = planar_offset(x).norm();
        const double f = x.z() * x.z() + 1.0;
        return -f * std::log(r) / (2.0 * kPi * kappa) + smooth_radial(r);
    };
    c.q = [kappa](const Point& x) {
        const Vec3 d = planar_offset(x);
        const double r2 = d.squaredNorm();
        const double f = x.z() * x.z() + 1.0;
        Vec3 grad = -f * d / (2.0 * kPi * kappa * r2) + smooth_radial_gradient(d);
        grad.z() += -2.0 * x.z() * std::log(std::sqrt(r2)) / (2.0 * kPi * kappa);
        return Vec3(-kappa * grad);
    };
    // kappa ln r / pi needed by u_r, minus the -ln r / pi the splitting provides.
    c.background = [kappa](const Point& x) {
        return (1.0 + kappa) * std::log(planar_offset(x).norm()) / kPi;
    };
    c.distance = [](const Point& x) { return planar_offset(x).norm(); };
    split.u0 = ScalarField{c.u, [q = c.q, kappa](const Point& x) { return Vec3(-q(x) / kappa); }, {}};
    c.split = std::move(split);
    return c;
}

ManufacturedCase network_case(const LineNetwork& net, double kappa)
{
    ManufacturedCase c;
    c.name = "network_3d";
    c.dim = 3;
    c.kappa = kappa;

    SplitProblem split{net, LineKernelKind::segment, KernelParams::for_domain(kappa, std::sqrt(3.0)),
                       ScalarField::constant(1.0), ScalarField::constant(0.0)};

    c.remainder_u = [net](const Point& x) {
        double sum = 0.0;
        for (const auto& s : net.segments()) {
            sum += (x - s.b()).norm() - (x - s.a()).norm();
        }
        return sum / (4.0 * kPi);
    };
    c.remainder_q = [net, kappa](const Point& x) {
        Vec3 grad = Vec3::Zero();
        for (const auto& s : net.segments()) {
            grad += (x - s.b()).normalized() - (x - s.a()).normalized();
        }
        return Vec3(-kappa * grad / (4.0 * kPi));
    };
    c.remainder_divergence = [net, kappa](const Point& x) {
        double sum = 0.0;
        for (const auto& s : net.segments()) {
            sum += 1.0 / (x - s.a()).norm() - 1.0 / (x - s.b()).norm();
        }
        return kappa * sum / (2.0 * kPi);
    };
    // The splitting supplies slope_i / (2 pi) (1/r_a - 1/r_b) per segment.
    c.background = [net, kappa](const Point& x) {
        double sum = 0.0;
        for (const auto& s : net.segments()) {
            sum += (kappa - s.intensity_slope()) *
                   (1.0 / (x - s.a()).norm() - 1.0 / (x - s.b()).norm());
        }
        return sum / (2.0 * kPi);
    };
    c.distance = [net](const Point& x) { return distance_to_network(x, net); };

    const auto u_r = c.remainder_u;
    const auto q_r = c.remainder_q;
    c.u = [split, u_r](const Point& x) { return singular_pressure(x, split) + u_r(x); };
    c.q = [split, q_r](const Point& x) { return Vec3(singular_flux(x, split) + q_r(x)); };
    split.u0 = ScalarField{c.u, [q = c.q, kappa](const Point& x) { return Vec3(-q(x) / kappa); }, {}};
    c.split = std::move(split);
    return c;
}

} // namespace linesource
