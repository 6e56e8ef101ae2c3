#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "hjwave/field.hpp"
#include "hjwave/tridiagonal.hpp"

namespace hjwave::quantum {

/// Potential energy V(x).
class PotentialSpec {
public:
    enum class Kind { zero, box, harmonic, tabulated };

    static PotentialSpec zero();
    /// Square well: 0 for |x - center| <= width/2, `depth` outside.
    static PotentialSpec box(double width, double depth, double center = 0.0);
    /// ½ m ω² (x - center)²
    static PotentialSpec harmonic(double omega, double mass = 1.0, double center = 0.0);
    /// One sample per node of `grid`; only valid on that grid.
    static PotentialSpec tabulated(const Grid1D& grid, std::vector<double> samples);

    Kind kind() const noexcept { return kind_; }
    double omega() const noexcept { return omega_; }
    std::vector<double> sample(const Grid1D& grid) const;

private:
    PotentialSpec() = default;

    Kind kind_ = Kind::zero;
    double omega_ = 0.0, mass_ = 1.0, center_ = 0.0, width_ = 0.0, depth_ = 0.0;
    std::vector<double> samples_;
    std::vector<Grid1D> grid_; // at most one entry, for tabulated
};

/// H = -(ħ²/2m) d²/dx² + V(x) with the 3-point Laplacian.
///
/// On Dirichlet grids the end nodes are walls: the operator acts on the
/// interior nodes, reads the walls as 0 and writes 0 there. Periodic grids wrap.
class Hamiltonian {
public:
    Hamiltonian(const Grid1D& grid, std::vector<double> potential, double hbar, double mass);

    static Hamiltonian build(const PotentialSpec& v, const Grid1D& grid, double hbar, double mass);

    const Grid1D& grid() const noexcept { return grid_; }
    double hbar() const noexcept { return hbar_; }
    double mass() const noexcept { return mass_; }
    std::span<const double> potential() const noexcept { return potential_; }

    /// Off-diagonal coupling -ħ²/(2m Δx²).
    double off_diagonal() const noexcept { return off_; }
    /// Diagonal ħ²/(m Δx²) + V at every node.
    std::span<const double> diagonal() const noexcept { return diag_; }

    /// Number of unknowns (interior nodes on Dirichlet grids, all nodes on periodic grids).
    std::size_t dimension() const noexcept;
    /// First node index carrying an unknown.
    std::size_t first_unknown() const noexcept { return grid_.periodic() ? 0 : 1; }

    ComplexField apply(const ComplexField& psi) const;

    /// Dense row-major matrix over the unknowns (tests, small grids).
    std::vector<double> dense() const;

private:
    Grid1D grid_;
    std::vector<double> potential_;
    std::vector<double> diag_;
    double hbar_, mass_, off_;
};

/// Ascending eigenvalues with orthonormal eigenfunctions.
class SpectralDecomposition {
public:
    SpectralDecomposition(std::vector<double> eigenvalues, std::vector<ComplexField> eigenfunctions);

    std::span<const double> eigenvalues() const noexcept { return eigenvalues_; }
    std::span<const ComplexField> eigenfunctions() const noexcept { return eigenfunctions_; }
    std::size_t size() const noexcept { return eigenvalues_.size(); }
    const Grid1D& grid() const noexcept { return eigenfunctions_.front().grid(); }
    Boundary boundary() const noexcept { return grid().boundary(); }

    /// max_{i,j} |<ψ_i, ψ_j> - δ_ij|
    double orthonormality_defect() const;

private:
    std::vector<double> eigenvalues_;
    std::vector<ComplexField> eigenfunctions_;
};

/// The k lowest eigenpairs (LAPACK dstevr on Dirichlet, dsyevr on periodic grids).
/// Requires k <= n_points/4; eigenvectors are real with their largest component positive.
SpectralDecomposition eigensolve(const Hamiltonian& h, std::size_t k);

/// Every eigenpair of the discrete operator, without the resolution guard.
SpectralDecomposition eigensolve_all(const Hamiltonian& h);

/// Crank-Nicolson propagator (I + i dt H/2ħ) ψ_new = (I - i dt H/2ħ) ψ_old.
class CrankNicolson {
public:
    CrankNicolson(const Hamiltonian& h, double dt);

    double dt() const noexcept { return dt_; }
    const Hamiltonian& hamiltonian() const noexcept { return h_; }

    ComplexField step(const ComplexField& psi) const;
    ComplexField advance(const ComplexField& psi, std::size_t n_steps) const;

private:
    Hamiltonian h_;
    double dt_;
    TridiagonalSolver solver_;
};

/// Advances a normalized state n_steps steps of size dt.
ComplexField propagate(const ComplexField& psi0, const PotentialSpec& v, double hbar, double mass, double dt,
                       std::size_t n_steps);

struct PropagationSample {
    double t;
    double norm;
    double x_mean;
    double p_mean;
    double e_mean;
};

/// Diagnostics of a state under a Hamiltonian.
PropagationSample diagnostics(const ComplexField& psi, const Hamiltonian& h, double t);

/// Propagation recording diagnostics every `every` steps (including t0 and the final step).
std::vector<PropagationSample> propagate_recorded(const ComplexField& psi0, const CrankNicolson& cn,
                                                  std::size_t n_steps, std::size_t every,
                                                  ComplexField* final_state = nullptr);

/// Ŝ = -iħ log ψ with arg ψ unwrapped from the leftmost node above the amplitude floor.
ComplexMasked quantum_action(const ComplexField& psi, double hbar);

/// (iħ/2m) ∇²Ŝ, the term separating the quantum from the classical HJ equation.
ComplexMasked quantum_correction_term(const ComplexField& psi, double hbar, double mass);

/// |(1/2m)(∇Ŝ)² + V + ∂Ŝ/∂t - (iħ/2m)∇²Ŝ| with ∂Ŝ/∂t = -iħ (∂ψ/∂t)/ψ.
RealMasked quantum_hj_residual(const ComplexField& psi, std::span<const double> potential, double hbar,
                               double mass, const ComplexField& dpsi_dt);

/// -(ħ²/2m)∇²ψ + Vψ - iħ ∂ψ/∂t (∇² in the grid's natural scheme).
ComplexMasked schrodinger_residual_signed(const ComplexField& psi, std::span<const double> potential, double hbar,
                                          double mass, const ComplexField& dpsi_dt);

/// Classical and Schrödinger residuals of one field side by side.
///
/// `correction` is -(ħ²/2m) X ∇(X'/X), evaluated independently by differencing
/// the ratio X'/X; the identity quantum = classical + correction holds in the
/// continuum, so `mismatch` = max |quantum - classical - correction| is pure
/// discretization error.
struct LinearizationLedger {
    ComplexMasked classical;
    ComplexMasked quantum;
    ComplexMasked correction;
    double mismatch = 0.0;
    double max_correction = 0.0;
};

LinearizationLedger linearization_demo(const ComplexField& x, std::span<const double> potential, double hbar,
                                       double mass, const ComplexField& dx_dt);

} // namespace hjwave::quantum
