#pragma once

// N-particle non-interacting machinery: Slater determinants over
// eigenorbitals, densities, single-particle density matrices and natural
// orbitals, and fermionic ladder operators on a finite Fock space.

#include <vector>

#include "torusdft/spectral.hpp"

namespace torusdft {

// Occupations below this are dropped from natural-orbital decompositions.
inline constexpr double kOccupationFloor = 1e-10;
// Eigenvalues of a density matrix below this are rejected as invalid.
inline constexpr double kPsdTolerance = -1e-8;
// Grid values of a density in [-1e-10, 0) are clamped to zero (audited).
inline constexpr double kDensityClampFloor = -1e-10;

// Hard cap on the orbital universe: 2^L amplitudes are stored densely.
inline constexpr int kMaxFockOrbitals = 20;

// Small dense complex matrix, column-major.
struct CMatrix {
  int n = 0;
  std::vector<Complex> a;

  CMatrix() = default;
  explicit CMatrix(int dim) : n(dim), a(static_cast<size_t>(dim) * dim) {}
  Complex& operator()(int i, int j) { return a[static_cast<size_t>(j) * n + i]; }
  const Complex& operator()(int i, int j) const {
    return a[static_cast<size_t>(j) * n + i];
  }
  Complex trace() const;
  double hermiticity_defect() const;
};

// Determinant state: strictly increasing orbital indices (0-based) into an
// eigensolution. Energy is the sum of the occupied eigenvalues.
struct SlaterState {
  const EigenSolution* solution = nullptr;
  std::vector<int> orbitals;

  double energy() const;
};

// Element of the fermionic Fock space over an L-orbital universe.
// Amplitudes are indexed by occupation bitmask (bit j = orbital j).
class FockVector {
 public:
  FockVector(int orbital_count, int particle_count);

  int orbitals() const { return L_; }
  int particles() const { return N_; }
  Complex amplitude(uint32_t mask) const { return amp_[mask]; }
  void set_amplitude(uint32_t mask, Complex value);
  const std::vector<Complex>& amplitudes() const { return amp_; }

  double norm() const;
  bool is_zero(double tol = 0.0) const;

 private:
  int L_;
  int N_;  // particle number of the support
  std::vector<Complex> amp_;
};

FockVector fock_vacuum(int L);

enum class FockOp { kAnnihilate, kCreate };

// Signed bitstring action of a_j / a_j^* (Jordan-Wigner sign
// (-1)^{#occupied below j}). Annihilating an empty orbital yields the
// zero vector, creating an occupied one likewise.
FockVector fock_apply(FockOp kind, int j, const FockVector& state);

// a_{j1}^* ... a_{jN}^* |vac>, indices strictly increasing.
FockVector slater_fock(int L, const std::vector<int>& orbitals);

// gamma_ab = <a_a Psi, a_b Psi>: the one-particle density matrix in the
// universe basis, computed with ladder operators.
CMatrix one_rdm_car(const FockVector& psi);

// --- tensor-grid oracle path (independent of the ladder-operator path) ---

// N-particle wavefunction sampled on the uniform tensor grid, n points per
// axis, values in row-major order over (x_1, ..., x_N).
struct WaveGrid {
  int particles = 0;
  int n = 0;
  std::vector<Complex> values;

  Complex value(const std::vector<int>& idx) const;
};

// First-quantized form of a Fock vector: sum over occupied masks of
// amplitude * (N!)^{-1/2} det[phi_{j_a}(x_b)].
WaveGrid sample_fock_wavefunction(const FockVector& psi,
                                  const std::vector<PeriodicFunction>& orbitals,
                                  int n);

// gamma_ab = N integral phi_a(x) conj(phi_b(y)) conj(Psi(x,rest)) Psi(y,rest)
// by tensor-product trapezoidal quadrature (exact for band-limited data).
// Feasibility: N in {1,2,3}; n <= 64 for N <= 2, n <= 24 for N = 3.
CMatrix brute_force_1rdm(const WaveGrid& psi,
                         const std::vector<PeriodicFunction>& basis);

// rho_{Psi,Phi}(x_i) = N w^{N-1} sum_rest conj(Psi(x_i,rest)) Phi(x_i,rest);
// both grids must share n and particle number.
std::vector<Complex> overlap_density_grid(const WaveGrid& psi,
                                          const WaveGrid& phi);

// --- natural orbitals ---

struct NaturalOrbitalDecomposition {
  std::vector<PeriodicFunction> orbitals;  // L2-orthonormal
  std::vector<double> occupations;         // descending, > kOccupationFloor

  int rank() const { return static_cast<int>(occupations.size()); }
  double occupation_sum() const;
};

// Eigendecomposition of a Hermitian PSD matrix expressed over `basis`.
// Throws when an eigenvalue falls below the PSD tolerance.
NaturalOrbitalDecomposition natural_orbitals(
    const CMatrix& gamma, const std::vector<PeriodicFunction>& basis);

// --- densities ---

struct Density {
  int cutoff = 0;
  std::vector<Complex> coeffs;  // band -cutoff..cutoff
  int grid_n = 0;
  std::vector<double> grid;     // clamped nonnegative values
  int particles = 0;
  int clamp_count = 0;          // grid values lifted from [-1e-10, 0)

  double integral() const;      // sqrt(2*pi) * Re(c_0)
  double min_on_grid() const;
  PeriodicFunction as_function() const;
};

// Build a Density from real grid values (clamping audit applied) with
// coefficients extracted at `cutoff`.
Density density_from_grid(const std::vector<double>& values, int cutoff,
                          int particles);

// rho = sum_{j in occupied} |phi_j|^2 on the alias-free grid. Duplicate
// indices are rejected (exclusion principle). Filling {0..N-1} while the
// Fermi level is degenerate is refused as an open shell; use
// ground_state_density for the ensemble route.
Density slater_density(const EigenSolution& sol, const std::vector<int>& occupied);

// Convex combination of determinant densities sharing an eigensolution
// and particle number; weights must be nonnegative and sum to 1 (1e-12).
Density ensemble_density(const std::vector<SlaterState>& states,
                         const std::vector<double>& weights);

// Aufbau ground-state density; on a degenerate Fermi level, the uniform
// mixture over all determinant fillings of the partial shell.
Density ground_state_density(const EigenSolution& sol, int particles);

// Lemma of overlapping densities with single excitations, determinant
// case: for Phi = a(target)^* a(phi_k) Psi the overlap density equals
// n_k conj(phi_k) target. Requires target orthogonal to every occupied
// orbital (1e-10); k outside the occupied set gives the zero function.
PeriodicFunction overlap_density(const SlaterState& psi, int k,
                                 const PeriodicFunction& target);

// Same formula for a state with known natural orbitals; k indexes the
// decomposition.
PeriodicFunction overlap_density(const NaturalOrbitalDecomposition& nos, int k,
                                 const PeriodicFunction& target);

}  // namespace torusdft
