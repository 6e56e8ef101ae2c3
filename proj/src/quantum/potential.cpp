#include <cmath>

#include "hjwave/error.hpp"
#include "hjwave/quantum.hpp"

namespace hjwave::quantum {

PotentialSpec PotentialSpec::zero() { return PotentialSpec{}; }

PotentialSpec PotentialSpec::box(double width, double depth, double center)
{
    if (!(width > 0.0) || !std::isfinite(depth) || !std::isfinite(center))
        throw DomainError("box potential needs width > 0 and finite depth");
    PotentialSpec v;
    v.kind_ = Kind::box;
    v.width_ = width;
    v.depth_ = depth;
    v.center_ = center;
    return v;
}

PotentialSpec PotentialSpec::harmonic(double omega, double mass, double center)
{
    if (!(omega > 0.0) || !(mass > 0.0)) throw DomainError("harmonic potential requires omega > 0 and mass > 0");
    PotentialSpec v;
    v.kind_ = Kind::harmonic;
    v.omega_ = omega;
    v.mass_ = mass;
    v.center_ = center;
    return v;
}

PotentialSpec PotentialSpec::tabulated(const Grid1D& grid, std::vector<double> samples)
{
    if (samples.size() != grid.size()) throw DomainError("tabulated potential needs one sample per node");
    for (double s : samples)
        if (!std::isfinite(s)) throw DomainError("tabulated potential has non-finite samples");
    PotentialSpec v;
    v.kind_ = Kind::tabulated;
    v.samples_ = std::move(samples);
    v.grid_.push_back(grid);
    return v;
}

std::vector<double> PotentialSpec::sample(const Grid1D& grid) const
{
    std::vector<double> out(grid.size(), 0.0);
    switch (kind_) {
    case Kind::zero: break;
    case Kind::box:
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = std::abs(grid.x(i) - center_) <= 0.5 * width_ ? 0.0 : depth_;
        break;
    case Kind::harmonic:
        for (std::size_t i = 0; i < out.size(); ++i) {
            const double d = grid.x(i) - center_;
            out[i] = 0.5 * mass_ * omega_ * omega_ * d * d;
        }
        break;
    case Kind::tabulated:
        if (!(grid_.front() == grid)) throw GridMismatchError("tabulated potential sampled on a different grid");
        out = samples_;
        break;
    }
    return out;
}

} // namespace hjwave::quantum
