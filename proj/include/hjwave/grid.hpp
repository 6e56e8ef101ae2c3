#pragma once

#include <cstddef>
#include <vector>

namespace hjwave {

enum class Boundary { dirichlet, periodic };

const char* to_string(Boundary b);
Boundary boundary_from_string(const char* name);

/// Uniform 1-D lattice.
///
/// Dirichlet grids include both end points (x_max is the last node); periodic
/// grids exclude x_max, which is identified with x_min.
class Grid1D {
public:
    static constexpr std::size_t min_points = 16;

    Grid1D(double x_min, double x_max, std::size_t n_points, Boundary boundary);

    double x_min() const noexcept { return x_min_; }
    double x_max() const noexcept { return x_max_; }
    double length() const noexcept { return x_max_ - x_min_; }
    std::size_t size() const noexcept { return n_points_; }
    Boundary boundary() const noexcept { return boundary_; }
    bool periodic() const noexcept { return boundary_ == Boundary::periodic; }
    double spacing() const noexcept { return dx_; }

    double x(std::size_t i) const noexcept { return x_min_ + static_cast<double>(i) * dx_; }
    std::vector<double> coordinates() const;

    /// Trapezoid weight of node i.
    double weight(std::size_t i) const noexcept;

    /// Index of the node at position `x`; throws DomainError when `x` is not a node.
    std::size_t node_index(double x) const;

    bool operator==(const Grid1D&) const = default;

private:
    double x_min_;
    double x_max_;
    std::size_t n_points_;
    Boundary boundary_;
    double dx_;
};

/// Physical constants in the configurable unit system (defaults are natural units).
struct PhysicalConstants {
    double hbar = 1.0;
    double mass = 1.0;
    double c = 1.0;
    double omega = 1.0;

    void validate() const;
};

} // namespace hjwave
