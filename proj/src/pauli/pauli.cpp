#include <cmath>
#include <string>

#include "hjwave/error.hpp"
#include "hjwave/kernels.hpp"
#include "hjwave/pauli.hpp"

namespace hjwave::pauli {

const Matrix2& sigma(int k)
{
    static const Matrix2 s1{{{0.0, 1.0}, {1.0, 0.0}}};
    static const Matrix2 s2{{{0.0, cplx{0.0, -1.0}}, {cplx{0.0, 1.0}, 0.0}}};
    static const Matrix2 s3{{{1.0, 0.0}, {0.0, -1.0}}};
    switch (k) {
    case 1: return s1;
    case 2: return s2;
    case 3: return s3;
    default: throw DomainError("Pauli matrix index must be 1, 2 or 3");
    }
}

SpinorField::SpinorField(ComplexField plus, ComplexField minus) : plus_(std::move(plus)), minus_(std::move(minus))
{
    require_same_grid(plus_, minus_);
}

double SpinorField::norm_squared() const { return hjwave::norm_squared(plus_) + hjwave::norm_squared(minus_); }

double EMFieldConfig::magnetic_moment(double g, double charge, double hbar, double mass, double c)
{
    return g * charge * hbar / (4.0 * mass * c);
}

void EMFieldConfig::validate(const Grid1D& grid, double hbar, double mass, double c) const
{
    auto check = [&](const std::vector<double>& v, const char* what) {
        if (!v.empty() && v.size() != grid.size())
            throw DomainError(std::string(what) + " needs one sample per node");
        for (double x : v)
            if (!std::isfinite(x)) throw DomainError(std::string("non-finite ") + what);
    };
    check(vector_potential, "vector potential");
    check(scalar_potential, "scalar potential");
    if (!b_samples.empty() && b_samples.size() != grid.size())
        throw DomainError("magnetic field needs one sample per node");
    for (const auto& b : b_samples)
        for (double x : b)
            if (!std::isfinite(x)) throw DomainError("non-finite magnetic field");
    for (double x : b_uniform)
        if (!std::isfinite(x)) throw DomainError("non-finite magnetic field");
    if (!std::isfinite(mu_s) || !std::isfinite(charge)) throw DomainError("non-finite moment or charge");
    if (g_factor) {
        const double expected = magnetic_moment(*g_factor, charge, hbar, mass, c);
        if (std::abs(mu_s - expected) > 1e-12 * std::max(1.0, std::abs(expected)))
            throw DomainError("mu_s = " + std::to_string(mu_s) + " is inconsistent with g e hbar/(4 m c) = " +
                              std::to_string(expected));
    }
}

namespace {

// exp(-i φ n·σ) = cos φ 1 - i sin φ n·σ
Matrix2 spin_rotation(const std::array<double, 3>& b, double mu_s, double tau, double hbar)
{
    const double mag = std::sqrt(b[0] * b[0] + b[1] * b[1] + b[2] * b[2]);
    if (mag == 0.0 || mu_s == 0.0) return {{{1.0, 0.0}, {0.0, 1.0}}};
    const double phi = mu_s * mag * tau / hbar;
    const double nx = b[0] / mag, ny = b[1] / mag, nz = b[2] / mag;
    const cplx cs = std::cos(phi);
    const cplx mis{0.0, -std::sin(phi)};
    return {{{cs + mis * nz, mis * cplx{nx, -ny}}, {mis * cplx{nx, ny}, cs - mis * nz}}};
}

} // namespace

PauliPropagator::PauliPropagator(const Grid1D& grid, EMFieldConfig fields, double hbar, double mass, double c,
                                 double dt)
    : grid_(grid), fields_(std::move(fields)), hbar_(hbar), mass_(mass), c_(c), dt_(dt)
{
    if (!(hbar > 0.0) || !(mass > 0.0) || !(c > 0.0)) throw DomainError("hbar, mass and c must be positive");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("time step must be positive");
    fields_.validate(grid, hbar, mass, c);

    const std::size_t n = grid.size();
    const double dx = grid.spacing();
    const double off = -hbar * hbar / (2.0 * mass * dx * dx);
    diag_.assign(n, -2.0 * off);
    for (std::size_t i = 0; i < n; ++i)
        if (!fields_.scalar_potential.empty()) diag_[i] += fields_.charge * fields_.scalar_potential[i];
    hop_.assign(n, off);
    if (!fields_.vector_potential.empty()) {
        const auto& a = fields_.vector_potential;
        for (std::size_t i = 0; i < n; ++i) {
            const double mid = 0.5 * (a[i] + a[(i + 1) % n]);
            hop_[i] = off * std::polar(1.0, -fields_.charge * mid * dx / (hbar * c));
        }
    }

    half_rotation_.resize(fields_.b_samples.empty() ? 1 : n);
    for (std::size_t i = 0; i < half_rotation_.size(); ++i)
        half_rotation_[i] = spin_rotation(fields_.b_samples.empty() ? fields_.b_uniform : fields_.b_samples[i],
                                          fields_.mu_s, 0.5 * dt, hbar);

    const bool periodic = grid.periodic();
    const std::size_t first = periodic ? 0 : 1;
    const std::size_t d = periodic ? n : n - 2;
    const cplx factor{0.0, dt / (2.0 * hbar)};
    std::vector<cplx> lower(d - 1), diag(d), upper(d - 1);
    for (std::size_t r = 0; r < d; ++r) diag[r] = 1.0 + factor * diag_[r + first];
    for (std::size_t r = 0; r + 1 < d; ++r) {
        upper[r] = factor * hop_[r + first];
        lower[r] = factor * std::conj(hop_[r + first]);
    }
    if (periodic)
        solver_.emplace(lower, diag, upper, factor * std::conj(hop_[n - 1]), factor * hop_[n - 1]);
    else
        solver_.emplace(lower, diag, upper);
}

ComplexField PauliPropagator::apply_spatial(const ComplexField& f) const
{
    if (!(f.grid() == grid_)) throw GridMismatchError("component and propagator live on different grids");
    const std::size_t n = grid_.size();
    const bool periodic = grid_.periodic();
    auto in = [&](std::size_t i) { return (!periodic && (i == 0 || i + 1 == n)) ? cplx{} : f[i]; };
    std::vector<cplx> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!periodic && (i == 0 || i + 1 == n)) continue;
        const std::size_t l = (i + n - 1) % n, r = (i + 1) % n;
        out[i] = diag_[i] * in(i) + hop_[i] * in(r) + std::conj(hop_[l]) * in(l);
    }
    return ComplexField(grid_, std::move(out), f.time());
}

void PauliPropagator::rotate_spins(std::vector<cplx>& plus, std::vector<cplx>& minus) const
{
    for (std::size_t i = 0; i < plus.size(); ++i) {
        const Matrix2& u = half_rotation_.size() == 1 ? half_rotation_[0] : half_rotation_[i];
        const cplx a = plus[i], b = minus[i];
        plus[i] = u[0][0] * a + u[0][1] * b;
        minus[i] = u[1][0] * a + u[1][1] * b;
    }
}

SpinorField PauliPropagator::step(const SpinorField& s) const
{
    if (!(s.grid() == grid_)) throw GridMismatchError("spinor and propagator live on different grids");
    std::vector<cplx> plus(s.plus().values().begin(), s.plus().values().end());
    std::vector<cplx> minus(s.minus().values().begin(), s.minus().values().end());
    rotate_spins(plus, minus);

    const bool periodic = grid_.periodic();
    const std::size_t first = periodic ? 0 : 1;
    const std::size_t d = periodic ? grid_.size() : grid_.size() - 2;
    const cplx factor{0.0, -dt_ / (2.0 * hbar_)};
    for (std::vector<cplx>* comp : {&plus, &minus}) {
        const ComplexField hf = apply_spatial(ComplexField(grid_, *comp));
        kernels::axpy(factor, hf.values(), *comp);
        solver_->solve(std::span<cplx>(comp->data() + first, d));
        if (!periodic) comp->front() = comp->back() = 0.0;
    }

    rotate_spins(plus, minus);
    std::optional<double> t;
    if (s.time()) t = *s.time() + dt_;
    for (const auto* comp : {&plus, &minus})
        for (const cplx& v : *comp)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw NumericalError("Pauli step produced a non-finite value");
    return SpinorField(ComplexField(grid_, std::move(plus), t), ComplexField(grid_, std::move(minus), t));
}

SpinorField PauliPropagator::advance(const SpinorField& s, std::size_t n_steps) const
{
    SpinorField out = s;
    for (std::size_t k = 0; k < n_steps; ++k) out = step(out);
    return out;
}

SpinorField pauli_step(const SpinorField& s, const EMFieldConfig& fields, double hbar, double mass, double c,
                       double dt)
{
    if (std::abs(s.norm_squared() - 1.0) > 1e-6) throw DomainError("spinor must be normalized");
    return PauliPropagator(s.grid(), fields, hbar, mass, c, dt).step(s);
}

SpinExpectation spin_expectations(const SpinorField& s)
{
    const cplx cross = inner_product(s.plus(), s.minus());
    const double n2 = s.norm_squared();
    if (!(n2 > 0.0)) throw NumericalError("spin expectation of a zero spinor");
    return {2.0 * cross.real() / n2, 2.0 * cross.imag() / n2,
            (norm_squared(s.plus()) - norm_squared(s.minus())) / n2};
}

} // namespace hjwave::pauli
