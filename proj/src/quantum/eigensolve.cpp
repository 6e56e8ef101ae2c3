#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "hjwave/error.hpp"
#include "hjwave/quantum.hpp"

namespace hjwave::quantum {

SpectralDecomposition::SpectralDecomposition(std::vector<double> eigenvalues,
                                             std::vector<ComplexField> eigenfunctions)
    : eigenvalues_(std::move(eigenvalues)), eigenfunctions_(std::move(eigenfunctions))
{
    if (eigenvalues_.empty() || eigenvalues_.size() != eigenfunctions_.size())
        throw DomainError("spectral decomposition needs one eigenfunction per eigenvalue");
    for (std::size_t i = 0; i < eigenvalues_.size(); ++i) {
        if (!std::isfinite(eigenvalues_[i])) throw NumericalError("non-finite eigenvalue");
        if (i > 0 && eigenvalues_[i] < eigenvalues_[i - 1]) throw DomainError("eigenvalues must be ascending");
        require_same_grid(eigenfunctions_[0], eigenfunctions_[i]);
    }
}

double SpectralDecomposition::orthonormality_defect() const
{
    double worst = 0.0;
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = i; j < size(); ++j) {
            const cplx ip = inner_product(eigenfunctions_[i], eigenfunctions_[j]);
            worst = std::max(worst, std::abs(ip - (i == j ? 1.0 : 0.0)));
        }
    return worst;
}

namespace {

SpectralDecomposition solve(const Hamiltonian& h, std::size_t k)
{
    const Grid1D& grid = h.grid();
    const std::size_t d = h.dimension();
    const auto n = static_cast<lapack_int>(d);
    if (k == 0 || k > d) throw DomainError("requested " + std::to_string(k) + " eigenpairs of a " +
                                           std::to_string(d) + "-dimensional operator");
    std::vector<double> w(d);
    std::vector<double> z(d * k);
    std::vector<lapack_int> isuppz(2 * d);
    lapack_int found = 0;
    lapack_int info = 0;
    if (!grid.periodic()) {
        std::vector<double> diag(h.diagonal().begin() + 1, h.diagonal().end() - 1);
        std::vector<double> off(d, h.off_diagonal());
        info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'I', n, diag.data(), off.data(), 0.0, 0.0, 1,
                              static_cast<lapack_int>(k), 0.0, &found, w.data(), z.data(), n, isuppz.data());
    } else {
        std::vector<double> a = h.dense();
        info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'V', 'I', 'U', n, a.data(), n, 0.0, 0.0, 1,
                              static_cast<lapack_int>(k), 0.0, &found, w.data(), z.data(), n, isuppz.data());
    }
    if (info != 0 || found != static_cast<lapack_int>(k))
        throw NumericalError("symmetric eigensolver failed: info=" + std::to_string(info) + ", found " +
                             std::to_string(found) + " of " + std::to_string(k) + " eigenpairs (n=" +
                             std::to_string(d) + ")");

    const double scale = 1.0 / std::sqrt(grid.spacing());
    const std::size_t s = h.first_unknown();
    std::vector<ComplexField> fns;
    fns.reserve(k);
    for (std::size_t j = 0; j < k; ++j) {
        const double* col = z.data() + j * d;
        std::size_t big = 0;
        for (std::size_t r = 1; r < d; ++r)
            if (std::abs(col[r]) > std::abs(col[big]) + 1e-12) big = r;
        const double sign = col[big] < 0.0 ? -1.0 : 1.0;
        std::vector<cplx> v(grid.size());
        for (std::size_t r = 0; r < d; ++r) v[r + s] = sign * scale * col[r];
        fns.emplace_back(grid, std::move(v));
    }
    w.resize(k);
    return SpectralDecomposition(std::move(w), std::move(fns));
}

} // namespace

SpectralDecomposition eigensolve(const Hamiltonian& h, std::size_t k)
{
    if (k > h.grid().size() / 4)
        throw DomainError("resolution guard: at most n_points/4 = " + std::to_string(h.grid().size() / 4) +
                          " levels can be requested, got " + std::to_string(k));
    return solve(h, k);
}

SpectralDecomposition eigensolve_all(const Hamiltonian& h) { return solve(h, h.dimension()); }

} // namespace hjwave::quantum
