#pragma once

#include <complex>
#include <span>
#include <vector>

namespace hjwave {

/// Factorized complex (cyclic) tridiagonal system A x = b.
///
/// lower[i] = A(i+1, i), diag[i] = A(i, i), upper[i] = A(i, i+1). For cyclic
/// systems corner_top = A(0, n-1) and corner_bottom = A(n-1, 0) and the
/// solve uses the Sherman-Morrison correction. The banded factorization is
/// LAPACK's partially pivoted zgttrf.
class TridiagonalSolver {
public:
    using cplx = std::complex<double>;

    TridiagonalSolver(std::vector<cplx> lower, std::vector<cplx> diag, std::vector<cplx> upper);
    TridiagonalSolver(std::vector<cplx> lower, std::vector<cplx> diag, std::vector<cplx> upper,
                      cplx corner_top, cplx corner_bottom);

    std::size_t size() const noexcept { return diag_.size(); }

    /// Overwrites rhs with the solution.
    void solve(std::span<cplx> rhs) const;

private:
    void factorize();
    void solve_banded(std::span<cplx> rhs) const;

    std::vector<cplx> lower_, diag_, upper_, upper2_;
    std::vector<int> pivots_;
    bool cyclic_ = false;
    cplx corner_top_{}, corner_bottom_{};
    cplx gamma_{};
    std::vector<cplx> sm_z_; // B^{-1} u for the cyclic correction
};

} // namespace hjwave
