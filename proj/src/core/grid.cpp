#include "hjwave/grid.hpp"

#include <cmath>
#include <cstring>
#include <string>

#include "hjwave/error.hpp"

namespace hjwave {

const char* to_string(Boundary b)
{
    return b == Boundary::periodic ? "periodic" : "dirichlet";
}

Boundary boundary_from_string(const char* name)
{
    if (std::strcmp(name, "dirichlet") == 0) return Boundary::dirichlet;
    if (std::strcmp(name, "periodic") == 0) return Boundary::periodic;
    throw DomainError(std::string("unknown boundary condition: ") + name);
}

Grid1D::Grid1D(double x_min, double x_max, std::size_t n_points, Boundary boundary)
    : x_min_(x_min), x_max_(x_max), n_points_(n_points), boundary_(boundary), dx_(0.0)
{
    if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_max > x_min))
        throw DomainError("grid requires finite x_max > x_min");
    if (n_points < min_points)
        throw DomainError("grid requires at least " + std::to_string(min_points) + " points");
    const double cells = boundary == Boundary::periodic ? static_cast<double>(n_points)
                                                         : static_cast<double>(n_points - 1);
    dx_ = (x_max - x_min) / cells;
    if (!(dx_ > 0.0)) throw DomainError("grid spacing must be positive");
}

std::vector<double> Grid1D::coordinates() const
{
    std::vector<double> xs(n_points_);
    for (std::size_t i = 0; i < n_points_; ++i) xs[i] = x(i);
    return xs;
}

double Grid1D::weight(std::size_t i) const noexcept
{
    if (boundary_ == Boundary::dirichlet && (i == 0 || i + 1 == n_points_)) return 0.5 * dx_;
    return dx_;
}

std::size_t Grid1D::node_index(double xq) const
{
    const double s = (xq - x_min_) / dx_;
    const double r = std::round(s);
    if (!std::isfinite(s) || std::abs(s - r) > 1e-9 || r < 0.0 || r >= static_cast<double>(n_points_))
        throw DomainError("position " + std::to_string(xq) + " is not a grid node");
    return static_cast<std::size_t>(r);
}

void PhysicalConstants::validate() const
{
    if (!(hbar > 0.0) || !(mass > 0.0) || !(c > 0.0) || !(omega > 0.0))
        throw DomainError("hbar, mass, c and omega must be strictly positive");
}

} // namespace hjwave
