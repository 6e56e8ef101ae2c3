#include <string>

#include "hjwave/error.hpp"
#include "hjwave/operators.hpp"

namespace hjwave::operators {

namespace {

// d/dx with zero walls on Dirichlet grids, natural scheme otherwise.
ComplexField first_derivative(const ComplexField& f)
{
    const Grid1D& grid = f.grid();
    if (grid.periodic()) return derivative(f, 1, DerivativeScheme::spectral);
    const std::size_t n = grid.size();
    const double inv = 1.0 / (2.0 * grid.spacing());
    std::vector<cplx> out(n);
    auto at = [&](std::size_t i) { return (i == 0 || i + 1 == n) ? cplx{} : f[i]; };
    for (std::size_t i = 1; i + 1 < n; ++i) out[i] = (at(i + 1) - at(i - 1)) * inv;
    return ComplexField(grid, std::move(out), f.time());
}

} // namespace

LinearOperatorSpec::LinearOperatorSpec(Kind kind, const Grid1D& grid, std::string name)
    : kind_(kind), grid_(grid), name_(std::move(name))
{
}

LinearOperatorSpec LinearOperatorSpec::momentum(const Grid1D& grid, double hbar)
{
    if (!(hbar > 0.0)) throw DomainError("hbar must be positive");
    LinearOperatorSpec op(Kind::momentum, grid, "momentum");
    op.hbar_ = hbar;
    return op;
}

LinearOperatorSpec LinearOperatorSpec::hamiltonian(const quantum::Hamiltonian& h)
{
    LinearOperatorSpec op(Kind::hamiltonian, h.grid(), "hamiltonian");
    op.hbar_ = h.hbar();
    op.hamiltonian_.push_back(h);
    return op;
}

LinearOperatorSpec LinearOperatorSpec::position(const Grid1D& grid)
{
    return LinearOperatorSpec(Kind::position, grid, "position");
}

LinearOperatorSpec LinearOperatorSpec::custom_matrix(const Grid1D& grid, std::vector<cplx> matrix, std::string name)
{
    const std::size_t n = grid.size();
    if (matrix.size() != n * n)
        throw DomainError("custom matrix must be " + std::to_string(n) + "x" + std::to_string(n) + ", got " +
                          std::to_string(matrix.size()) + " entries");
    for (const cplx& v : matrix)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw DomainError("non-finite matrix entry");
    LinearOperatorSpec op(Kind::custom_matrix, grid, std::move(name));
    op.matrix_ = std::move(matrix);
    return op;
}

LinearOperatorSpec LinearOperatorSpec::derivative_control(const Grid1D& grid)
{
    return LinearOperatorSpec(Kind::derivative_control, grid, "d/dx");
}

ComplexField LinearOperatorSpec::apply(const ComplexField& f) const
{
    if (!(f.grid() == grid_)) throw GridMismatchError("field and operator live on different grids");
    switch (kind_) {
    case Kind::momentum: return first_derivative(f).scaled(cplx{0.0, -hbar_});
    case Kind::derivative_control: return first_derivative(f);
    case Kind::hamiltonian: return hamiltonian_.front().apply(f);
    case Kind::position: {
        std::vector<cplx> out(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) out[i] = grid_.x(i) * f[i];
        return ComplexField(grid_, std::move(out), f.time());
    }
    case Kind::custom_matrix: {
        const std::size_t n = f.size();
        std::vector<cplx> out(n);
        for (std::size_t r = 0; r < n; ++r) {
            cplx s{};
            for (std::size_t c = 0; c < n; ++c) s += matrix_[r * n + c] * f[c];
            out[r] = s;
        }
        return ComplexField(grid_, std::move(out), f.time());
    }
    }
    throw DomainError("unknown operator kind");
}

} // namespace hjwave::operators
