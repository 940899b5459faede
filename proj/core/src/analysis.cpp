#include "linesource/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "linesource/errors.hpp"
#include "linesource/quadrature.hpp"

namespace linesource {

void ErrorSpec::validate() const
{
    if (!(alpha >= -1.0 && alpha <= 2.0)) {
        throw ValidationError("weight exponent alpha must lie in [-1, 2]");
    }
    const bool scalar = std::holds_alternative<CellScalarFn>(reference);
    if (scalar != (quantity == Quantity::pressure)) {
        throw ValidationError("error reference does not match the quantity");
    }
}

double weighted_norm(const SimplicialMesh& mesh, const CellScalarFn& squared, double alpha,
                     const DistanceFn& distance, const NormOptions& options)
{
    const CellIntegrator integrator(mesh, options.order, distance, options.levels);
    double total = 0.0;
    for (int k = 0; k < mesh.num_cells(); ++k) {
        total += integrator.integrate(k, [&](const Point& x) {
            if (alpha == 0.0) {
                return squared(k, x);
            }
            const double r = std::max(distance(x), options.floor_radius);
            return std::pow(r, 2.0 * alpha) * squared(k, x);
        });
    }
    return std::sqrt(total);
}

double weighted_error(const MixedSpace& space, const DiscreteSolution& solution,
                      const ErrorSpec& spec, const DistanceFn& distance,
                      const NormOptions& options)
{
    spec.validate();
    if (spec.quantity == Quantity::pressure) {
        const auto& exact = std::get<CellScalarFn>(spec.reference);
        return weighted_norm(
            space.mesh(),
            [&](int k, const Point& x) {
                const double e = exact(k, x) - solution.pressure[k];
                return e * e;
            },
            spec.alpha, distance, options);
    }
    const auto& exact = std::get<CellVectorFn>(spec.reference);
    return weighted_norm(
        space.mesh(),
        [&](int k, const Point& x) {
            return (exact(k, x) - space.flux_at(k, solution.flux, x)).squaredNorm();
        },
        spec.alpha, distance, options);
}

double weighted_error(const MixedSpace& space, const DiscreteSolution& solution,
                      const ErrorSpec& spec, const LineNetwork& net, const NormOptions& options)
{
    return weighted_error(
        space, solution, spec,
        [&net](const Point& x) { return distance_to_network(x, net); }, options);
}

double divergence_error(const MixedSpace& space, const Eigen::VectorXd& flux,
                        const ScalarFn& exact_divergence, const DistanceFn& distance,
                        const NormOptions& options)
{
    return weighted_norm(
        space.mesh(),
        [&](int k, const Point& x) {
            const double e = exact_divergence(x) - space.flux_divergence(k, flux);
            return e * e;
        },
        0.0, distance, options);
}

std::vector<std::optional<double>> observed_rates(std::span<const double> errors)
{
    std::vector<std::optional<double>> rates;
    for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
        const double a = errors[i];
        const double b = errors[i + 1];
        if (a > 0.0 && b > 0.0 && std::isfinite(a) && std::isfinite(b)) {
            rates.emplace_back(std::log2(a / b));
        } else {
            rates.emplace_back(std::nullopt);
        }
    }
    return rates;
}

std::vector<double> ConvergenceTable::errors_u() const
{
    std::vector<double> e;
    for (const auto& r : rows) {
        e.push_back(r.error_u);
    }
    return e;
}

std::vector<double> ConvergenceTable::errors_q() const
{
    std::vector<double> e;
    for (const auto& r : rows) {
        e.push_back(r.error_q);
    }
    return e;
}

std::vector<std::optional<double>> ConvergenceTable::rates_u() const
{
    return observed_rates(errors_u());
}

std::vector<std::optional<double>> ConvergenceTable::rates_q() const
{
    return observed_rates(errors_q());
}

void ConvergenceTable::validate() const
{
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        const double ratio = rows[i].h / rows[i + 1].h;
        if (std::abs(ratio - 2.0) > 1e-12) {
            throw ValidationError("convergence table rows must halve h");
        }
    }
}

namespace {

std::string fmt6(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string fmt_rate(const std::vector<std::optional<double>>& rates, std::size_t row)
{
    if (row == 0 || !rates[row - 1]) {
        return "";
    }
    return fmt6(*rates[row - 1]);
}

} // namespace

std::string to_csv(const ConvergenceTable& table)
{
    std::ostringstream out;
    out << "h,error_u,rate_u,error_q,rate_q";
    if (table.alpha) {
        out << ",alpha";
    }
    out << '\n';
    const auto ru = table.rates_u();
    const auto rq = table.rates_q();
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& r = table.rows[i];
        out << fmt6(r.h) << ',' << fmt6(r.error_u) << ',' << fmt_rate(ru, i) << ','
            << fmt6(r.error_q) << ',' << fmt_rate(rq, i);
        if (table.alpha) {
            out << ',' << fmt6(*table.alpha);
        }
        out << '\n';
    }
    return out.str();
}

std::string series_to_csv(const std::string& name, std::span<const double> h,
                          std::span<const double> errors)
{
    std::ostringstream out;
    out << "h,error_" << name << ",rate_" << name << '\n';
    const auto rates = observed_rates(errors);
    for (std::size_t i = 0; i < errors.size(); ++i) {
        out << fmt6(h[i]) << ',' << fmt6(errors[i]) << ',' << fmt_rate(rates, i) << '\n';
    }
    return out.str();
}

} // namespace linesource
