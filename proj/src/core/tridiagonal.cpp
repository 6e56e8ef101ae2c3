#include "hjwave/tridiagonal.hpp"

#include <lapacke.h>

#include <string>

#include "hjwave/error.hpp"

namespace hjwave {

TridiagonalSolver::TridiagonalSolver(std::vector<cplx> lower, std::vector<cplx> diag, std::vector<cplx> upper)
    : lower_(std::move(lower)), diag_(std::move(diag)), upper_(std::move(upper))
{
    factorize();
}

TridiagonalSolver::TridiagonalSolver(std::vector<cplx> lower, std::vector<cplx> diag, std::vector<cplx> upper,
                                     cplx corner_top, cplx corner_bottom)
    : lower_(std::move(lower)), diag_(std::move(diag)), upper_(std::move(upper)), cyclic_(true),
      corner_top_(corner_top), corner_bottom_(corner_bottom)
{
    const std::size_t n = diag_.size();
    if (n < 3) throw DomainError("cyclic tridiagonal system needs at least 3 rows");
    gamma_ = -diag_[0];
    if (gamma_ == cplx{}) gamma_ = cplx{1.0, 0.0};
    diag_[0] -= gamma_;
    diag_[n - 1] -= corner_top_ * corner_bottom_ / gamma_;
    factorize();
    sm_z_.assign(n, cplx{});
    sm_z_[0] = gamma_;
    sm_z_[n - 1] = corner_bottom_;
    solve_banded(sm_z_);
}

void TridiagonalSolver::factorize()
{
    const std::size_t n = diag_.size();
    if (n == 0 || lower_.size() + 1 != n || upper_.size() + 1 != n)
        throw DomainError("tridiagonal band sizes are inconsistent");
    upper2_.assign(n > 2 ? n - 2 : 1, cplx{});
    pivots_.assign(n, 0);
    const lapack_int info = LAPACKE_zgttrf(static_cast<lapack_int>(n),
                                           reinterpret_cast<lapack_complex_double*>(lower_.data()),
                                           reinterpret_cast<lapack_complex_double*>(diag_.data()),
                                           reinterpret_cast<lapack_complex_double*>(upper_.data()),
                                           reinterpret_cast<lapack_complex_double*>(upper2_.data()),
                                           pivots_.data());
    if (info != 0)
        throw NumericalError("tridiagonal factorization failed (zgttrf info=" + std::to_string(info) + ")");
}

void TridiagonalSolver::solve_banded(std::span<cplx> rhs) const
{
    const std::size_t n = diag_.size();
    if (rhs.size() != n) throw DomainError("right-hand side has wrong length");
    const lapack_int info = LAPACKE_zgttrs(LAPACK_COL_MAJOR, 'N', static_cast<lapack_int>(n), 1,
                                           reinterpret_cast<const lapack_complex_double*>(lower_.data()),
                                           reinterpret_cast<const lapack_complex_double*>(diag_.data()),
                                           reinterpret_cast<const lapack_complex_double*>(upper_.data()),
                                           reinterpret_cast<const lapack_complex_double*>(upper2_.data()),
                                           pivots_.data(), reinterpret_cast<lapack_complex_double*>(rhs.data()),
                                           static_cast<lapack_int>(n));
    if (info != 0)
        throw NumericalError("tridiagonal solve failed (zgttrs info=" + std::to_string(info) + ")");
}

void TridiagonalSolver::solve(std::span<cplx> rhs) const
{
    solve_banded(rhs);
    if (!cyclic_) return;
    const std::size_t n = diag_.size();
    // v = (1, 0, ..., corner_top / gamma)
    const cplx vy = rhs[0] + corner_top_ / gamma_ * rhs[n - 1];
    const cplx vz = sm_z_[0] + corner_top_ / gamma_ * sm_z_[n - 1];
    const cplx factor = vy / (cplx{1.0, 0.0} + vz);
    for (std::size_t i = 0; i < n; ++i) rhs[i] -= factor * sm_z_[i];
}

} // namespace hjwave
