#pragma once

#include <functional>

#include <Eigen/Core>

namespace linesource {

/// Points and vectors are always three-dimensional; 2D problems live in the z = 0 plane.
using Vec3 = Eigen::Vector3d;
using Point = Vec3;

using ScalarFn = std::function<double(const Point&)>;
using VectorFn = std::function<Vec3(const Point&)>;

/// Fields that may depend on the containing cell (discrete solutions are cellwise polynomials).
using CellScalarFn = std::function<double(int cell, const Point&)>;
using CellVectorFn = std::function<Vec3(int cell, const Point&)>;

/// Distance from a point to the source set; the weight in all weighted norms.
using DistanceFn = std::function<double(const Point&)>;

inline CellScalarFn ignore_cell(ScalarFn fn)
{
    return [fn = std::move(fn)](int, const Point& x) { return fn(x); };
}

inline CellVectorFn ignore_cell(VectorFn fn)
{
    return [fn = std::move(fn)](int, const Point& x) { return fn(x); };
}

} // namespace linesource
