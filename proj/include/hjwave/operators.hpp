#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hjwave/field.hpp"
#include "hjwave/quantum.hpp"
#include "hjwave/random.hpp"

namespace hjwave::operators {

/// A linear operator acting on fields of one grid.
///
/// momentum: -iħ d/dx, spectral on periodic grids; on Dirichlet grids the
/// central difference with the walls read and written as 0.
/// derivative_control: the same d/dx without the -iħ (anti-Hermitian).
/// position: multiplication by x. hamiltonian: see quantum::Hamiltonian.
/// custom_matrix: dense row-major n x n matrix on the node values.
class LinearOperatorSpec {
public:
    enum class Kind { momentum, hamiltonian, position, custom_matrix, derivative_control };

    static LinearOperatorSpec momentum(const Grid1D& grid, double hbar);
    static LinearOperatorSpec hamiltonian(const quantum::Hamiltonian& h);
    static LinearOperatorSpec position(const Grid1D& grid);
    static LinearOperatorSpec custom_matrix(const Grid1D& grid, std::vector<cplx> matrix, std::string name = "custom");
    static LinearOperatorSpec derivative_control(const Grid1D& grid);

    Kind kind() const noexcept { return kind_; }
    const Grid1D& grid() const noexcept { return grid_; }
    const std::string& name() const noexcept { return name_; }

    ComplexField apply(const ComplexField& f) const;

private:
    LinearOperatorSpec(Kind kind, const Grid1D& grid, std::string name);

    Kind kind_;
    Grid1D grid_;
    std::string name_;
    double hbar_ = 1.0;
    std::vector<quantum::Hamiltonian> hamiltonian_; // at most one
    std::vector<cplx> matrix_;
};

struct HermiticityReport {
    double max_residual = 0.0;  // max |<f,Lg> - <Lf,g>| / (|f| |g| |L|_est)
    double norm_estimate = 0.0; // max |Lf| / |f| over the trial functions
    std::size_t trials = 0;
};

/// Smooth seeded trial function: up to 10 low Fourier modes with normal
/// coefficients; sine modes vanishing at the walls on Dirichlet grids.
ComplexField trial_function(const Grid1D& grid, Rng& rng);

HermiticityReport hermiticity_check(const LinearOperatorSpec& op, std::size_t trials, std::uint64_t seed);

/// Modified Gram-Schmidt with one reorthogonalization pass. Throws DomainError
/// naming the first input that is dependent on its predecessors (residual norm
/// below 1e-10 of its own norm).
std::vector<ComplexField> gram_schmidt(std::span<const ComplexField> fields);

/// Labelled set of basis functions on one grid.
///
/// Orthonormal bases have <b_i, b_j> = δ_ij. The position basis is
/// delta-normalized: b_j = 1/w_j at node j (w_j the quadrature weight), so
/// <b_j, f> = f(x_j).
class Basis {
public:
    Basis(std::vector<double> labels, std::vector<ComplexField> functions, bool delta_normalized = false);

    static Basis from_spectrum(const quantum::SpectralDecomposition& s);
    /// Box momentum eigenfunctions, ordered p = 0, +1, -1, +2, -2, ... (in units 2πħ/L).
    static Basis momentum_box(const Grid1D& grid, std::size_t count, double hbar);
    static Basis position(const Grid1D& grid);

    std::span<const double> labels() const noexcept { return labels_; }
    std::span<const ComplexField> functions() const noexcept { return functions_; }
    std::size_t size() const noexcept { return functions_.size(); }
    const Grid1D& grid() const noexcept { return functions_.front().grid(); }
    bool delta_normalized() const noexcept { return delta_; }

    Basis truncated(std::size_t count) const;

    /// max |<b_i,b_j> - δ_ij| over all pairs.
    double orthonormality_defect() const;

private:
    std::vector<double> labels_;
    std::vector<ComplexField> functions_;
    bool delta_;
};

/// u(x) = exp(i p x / ħ) / sqrt(L) with p = 2πħ index / L; periodic grids only.
ComplexField momentum_eigenfunction_box(long index, const Grid1D& grid, double hbar);
double box_momentum(long index, const Grid1D& grid, double hbar);

/// Discrete delta at node x': value 1/w at that node, 0 elsewhere.
ComplexField position_eigenfunction(double x_prime, const Grid1D& grid);

/// Expansion coefficients with eigenvalue labels.
///
/// `level` maps each coefficient to its degeneracy group (labels closer than
/// 1e-6 of the label range share a level); `level_values` holds one label per level.
struct ExpansionCoefficients {
    std::vector<double> labels;
    std::vector<cplx> values;
    std::vector<std::size_t> level;
    std::vector<double> level_values;

    /// sum |c_i|^2
    double parseval() const;
};

/// Groups labels into degenerate levels (threshold 1e-6 of the label range).
void assign_levels(ExpansionCoefficients& c);

/// c_i = <b_i, state>. Orthonormal bases are checked first (defect <= 1e-8).
ExpansionCoefficients expand(const ComplexField& state, const Basis& basis);
ExpansionCoefficients expand(const ComplexField& state, const quantum::SpectralDecomposition& basis);

/// sum_i c_i b_i (weighted by the quadrature for delta-normalized bases).
ComplexField reconstruct(const ExpansionCoefficients& c, const Basis& basis);

/// K_N(x, x') = sum_{i<N} b_i(x) conj(b_i(x')) as a function of x for node x'.
ComplexField completeness_kernel(const Basis& basis, std::size_t count, double x_prime);

/// ∫ K_N(x, x') f(x') dx' at every node.
ComplexField kernel_reproduction(const Basis& basis, std::size_t count, const ComplexField& f);

/// |f - K_N f| / |f|
double reproduction_error(const Basis& basis, std::size_t count, const ComplexField& f);

/// c(p) = (2πħ)^{-1/2} ∫ ψ(x) exp(-i p x/ħ) dx by trapezoid quadrature at the
/// nodes of p_grid. Requires |ψ| at both ends of the grid below 1e-10 max|ψ|.
ExpansionCoefficients continuum_momentum_density(const ComplexField& state, const Grid1D& p_grid, double hbar);

} // namespace hjwave::operators
