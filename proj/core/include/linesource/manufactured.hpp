#pragma once

#include <optional>
#include <string>

#include "linesource/line_network.hpp"
#include "linesource/splitting.hpp"
#include "linesource/types.hpp"

namespace linesource {

/// Closed-form test problem q = -kappa grad u, div q = f delta_source + background.
///
/// The background volume source is whatever the closed-form u needs off the
/// source set; for removal cases the remainder then solves
/// div q_r = remainder_source + background.
struct ManufacturedCase {
    std::string name;
    int dim = 3;
    double kappa = 1.0;

    ScalarFn u;
    VectorFn q;
    ScalarFn background;
    DistanceFn distance;

    /// Standard path data: point source in 2D.
    Point source_point = Point::Zero();
    double source_intensity = 0.0;

    /// Removal path data.
    std::optional<SplitProblem> split;
    ScalarFn remainder_u;
    VectorFn remainder_q;
    /// div q_r = -kappa lap u_r, in closed form.
    ScalarFn remainder_divergence;
};

/// Unit square, intensity-2 point source at the centre:
/// u = -2/(2 pi kappa) ln r + r^2 (1 - ln r) / (4 pi).
[[nodiscard]] ManufacturedCase point_source_case(double kappa = 1.0);

/// Unit cube, vertical line through (0.5, 0.5), intensity z^2 + 1:
/// u = (z^2 + 1) (-ln r)/(2 pi kappa) + r^2 (1 - ln r) / (4 pi).
[[nodiscard]] ManufacturedCase vertical_line_case(double kappa = 1.0);

/// Segment network with intensities 1 + slope_i tau_i . (x - a_i):
/// u = sum_i f_i G_i + sum_i (r_b,i - r_a,i) / (4 pi).
[[nodiscard]] ManufacturedCase network_case(const LineNetwork& net, double kappa = 1.0);

} // namespace linesource
