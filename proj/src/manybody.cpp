#define LAPACK_COMPLEX_CPP
#include "torusdft/manybody.hpp"

#include <lapacke.h>

#include <algorithm>
#include <bit>
#include <cmath>

namespace torusdft {

namespace {

int popcount_below(uint32_t mask, int j) {
  uint32_t below = mask & ((1u << j) - 1u);
  return std::popcount(below);
}

double jw_sign(uint32_t mask, int j) {
  return (popcount_below(mask, j) % 2 == 0) ? 1.0 : -1.0;
}

Complex det_small(const std::vector<Complex>& m, int n) {
  // row-major n x n, n <= 3
  if (n == 1) return m[0];
  if (n == 2) return m[0] * m[3] - m[1] * m[2];
  return m[0] * (m[4] * m[8] - m[5] * m[7]) -
         m[1] * (m[3] * m[8] - m[5] * m[6]) +
         m[2] * (m[3] * m[7] - m[4] * m[6]);
}

std::vector<int> occupied_list(uint32_t mask, int L) {
  std::vector<int> js;
  for (int j = 0; j < L; ++j) {
    if (mask & (1u << j)) js.push_back(j);
  }
  return js;
}

void check_feasible_tensor(int particles, int n) {
  if (particles < 1 || particles > 3) {
    throw std::invalid_argument("tensor-grid path supports N in {1,2,3}");
  }
  if ((particles <= 2 && n > 64) || (particles == 3 && n > 24)) {
    throw std::invalid_argument("tensor grid infeasible: n too large for N");
  }
}

}  // namespace

Complex CMatrix::trace() const {
  Complex t(0, 0);
  for (int i = 0; i < n; ++i) t += (*this)(i, i);
  return t;
}

double CMatrix::hermiticity_defect() const {
  double d = 0.0;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i <= j; ++i) {
      d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    }
  }
  return d;
}

double SlaterState::energy() const {
  double e = 0.0;
  for (int j : orbitals) e += solution->eigenvalues[static_cast<size_t>(j)];
  return e;
}

FockVector::FockVector(int orbital_count, int particle_count)
    : L_(orbital_count), N_(particle_count),
      amp_(static_cast<size_t>(1) << orbital_count, Complex(0, 0)) {
  if (orbital_count < 0 || orbital_count > kMaxFockOrbitals) {
    throw std::invalid_argument("orbital universe size out of range");
  }
  if (particle_count < 0 || particle_count > orbital_count) {
    throw std::invalid_argument("particle number out of range");
  }
}

void FockVector::set_amplitude(uint32_t mask, Complex value) {
  if (mask >= amp_.size()) throw std::out_of_range("bitmask out of range");
  if (std::popcount(mask) != N_) {
    throw std::invalid_argument("bitmask particle count mismatch");
  }
  amp_[mask] = value;
}

double FockVector::norm() const {
  double s = 0.0;
  for (const Complex& c : amp_) s += std::norm(c);
  return std::sqrt(s);
}

bool FockVector::is_zero(double tol) const {
  for (const Complex& c : amp_) {
    if (std::abs(c) > tol) return false;
  }
  return true;
}

FockVector fock_vacuum(int L) {
  FockVector v(L, 0);
  v.set_amplitude(0, Complex(1, 0));
  return v;
}

FockVector fock_apply(FockOp kind, int j, const FockVector& state) {
  if (j < 0 || j >= state.orbitals()) {
    throw std::out_of_range("orbital index outside universe");
  }
  const uint32_t bit = 1u << j;
  const int new_n = (kind == FockOp::kAnnihilate)
                        ? std::max(state.particles() - 1, 0)
                        : std::min(state.particles() + 1, state.orbitals());
  FockVector out(state.orbitals(), new_n);
  const size_t dim = state.amplitudes().size();
  for (uint32_t mask = 0; mask < dim; ++mask) {
    Complex c = state.amplitude(mask);
    if (c == Complex(0, 0)) continue;
    if (kind == FockOp::kAnnihilate) {
      if (!(mask & bit)) continue;
      out.set_amplitude(mask ^ bit, jw_sign(mask, j) * c);
    } else {
      if (mask & bit) continue;
      out.set_amplitude(mask | bit, jw_sign(mask, j) * c);
    }
  }
  return out;
}

FockVector slater_fock(int L, const std::vector<int>& orbitals) {
  for (size_t i = 1; i < orbitals.size(); ++i) {
    if (orbitals[i] <= orbitals[i - 1]) {
      throw std::invalid_argument("orbital indices must be strictly increasing");
    }
  }
  FockVector state = fock_vacuum(L);
  for (auto it = orbitals.rbegin(); it != orbitals.rend(); ++it) {
    state = fock_apply(FockOp::kCreate, *it, state);
  }
  return state;
}

CMatrix one_rdm_car(const FockVector& psi) {
  const int L = psi.orbitals();
  std::vector<FockVector> lowered;
  lowered.reserve(static_cast<size_t>(L));
  for (int j = 0; j < L; ++j) {
    lowered.push_back(fock_apply(FockOp::kAnnihilate, j, psi));
  }
  CMatrix gamma(L);
  for (int b = 0; b < L; ++b) {
    for (int a = 0; a < L; ++a) {
      Complex acc(0, 0);
      const auto& va = lowered[static_cast<size_t>(a)].amplitudes();
      const auto& vb = lowered[static_cast<size_t>(b)].amplitudes();
      for (size_t m = 0; m < va.size(); ++m) acc += std::conj(va[m]) * vb[m];
      gamma(a, b) = acc;
    }
  }
  return gamma;
}

Complex WaveGrid::value(const std::vector<int>& idx) const {
  size_t flat = 0;
  for (int i : idx) flat = flat * static_cast<size_t>(n) + static_cast<size_t>(i);
  return values[flat];
}

WaveGrid sample_fock_wavefunction(const FockVector& psi,
                                  const std::vector<PeriodicFunction>& orbitals,
                                  int n) {
  const int N = psi.particles();
  check_feasible_tensor(N, n);
  if (static_cast<int>(orbitals.size()) != psi.orbitals()) {
    throw std::invalid_argument("orbital list must match universe size");
  }
  // orbital values on the grid
  std::vector<std::vector<Complex>> vals;
  vals.reserve(orbitals.size());
  for (const PeriodicFunction& f : orbitals) {
    vals.push_back(grid_sample(f, n).values);
  }

  WaveGrid w;
  w.particles = N;
  w.n = n;
  size_t total = 1;
  for (int p = 0; p < N; ++p) total *= static_cast<size_t>(n);
  w.values.assign(total, Complex(0, 0));

  double inv_sqrt_fact = 1.0;
  for (int p = 2; p <= N; ++p) inv_sqrt_fact /= std::sqrt(static_cast<double>(p));

  const size_t dim = psi.amplitudes().size();
  std::vector<Complex> det_buf(static_cast<size_t>(N) * N);
  std::vector<int> idx(static_cast<size_t>(N), 0);
  for (uint32_t mask = 0; mask < dim; ++mask) {
    Complex amp = psi.amplitude(mask);
    if (amp == Complex(0, 0)) continue;
    std::vector<int> js = occupied_list(mask, psi.orbitals());
    std::fill(idx.begin(), idx.end(), 0);
    for (size_t flat = 0; flat < total; ++flat) {
      for (int a = 0; a < N; ++a) {
        for (int b = 0; b < N; ++b) {
          det_buf[static_cast<size_t>(a) * N + b] =
              vals[static_cast<size_t>(js[static_cast<size_t>(a)])]
                  [static_cast<size_t>(idx[static_cast<size_t>(b)])];
        }
      }
      w.values[flat] += amp * inv_sqrt_fact * det_small(det_buf, N);
      for (int p = N - 1; p >= 0; --p) {
        if (++idx[static_cast<size_t>(p)] < n) break;
        idx[static_cast<size_t>(p)] = 0;
      }
    }
  }
  return w;
}

CMatrix brute_force_1rdm(const WaveGrid& psi,
                         const std::vector<PeriodicFunction>& basis) {
  const int N = psi.particles;
  const int n = psi.n;
  check_feasible_tensor(N, n);
  const double weight = kTwoPi / n;
  size_t rest = 1;
  for (int p = 1; p < N; ++p) rest *= static_cast<size_t>(n);

  // M(x,y) = N w^{N-1} sum_rest conj(Psi(x,rest)) Psi(y,rest)
  std::vector<Complex> M(static_cast<size_t>(n) * n, Complex(0, 0));
  double scale = static_cast<double>(N);
  for (int p = 1; p < N; ++p) scale *= weight;
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      Complex acc(0, 0);
      const Complex* px = psi.values.data() + static_cast<size_t>(x) * rest;
      const Complex* py = psi.values.data() + static_cast<size_t>(y) * rest;
      for (size_t r = 0; r < rest; ++r) acc += std::conj(px[r]) * py[r];
      M[static_cast<size_t>(y) * n + x] = scale * acc;
    }
  }

  const int L = static_cast<int>(basis.size());
  std::vector<std::vector<Complex>> B;
  B.reserve(basis.size());
  for (const PeriodicFunction& f : basis) B.push_back(grid_sample(f, n).values);

  // gamma_ab = w^2 sum_{x,y} phi_a(x) M(x,y) conj(phi_b(y))
  CMatrix gamma(L);
  for (int a = 0; a < L; ++a) {
    std::vector<Complex> t(static_cast<size_t>(n), Complex(0, 0));
    for (int y = 0; y < n; ++y) {
      Complex acc(0, 0);
      for (int x = 0; x < n; ++x) {
        acc += B[static_cast<size_t>(a)][static_cast<size_t>(x)] *
               M[static_cast<size_t>(y) * n + x];
      }
      t[static_cast<size_t>(y)] = acc;
    }
    for (int b = 0; b < L; ++b) {
      Complex acc(0, 0);
      for (int y = 0; y < n; ++y) {
        acc += t[static_cast<size_t>(y)] *
               std::conj(B[static_cast<size_t>(b)][static_cast<size_t>(y)]);
      }
      gamma(a, b) = weight * weight * acc;
    }
  }
  return gamma;
}

std::vector<Complex> overlap_density_grid(const WaveGrid& psi,
                                          const WaveGrid& phi) {
  if (psi.n != phi.n || psi.particles != phi.particles) {
    throw std::invalid_argument("overlap grids must share n and N");
  }
  const int n = psi.n;
  const int N = psi.particles;
  size_t rest = 1;
  for (int p = 1; p < N; ++p) rest *= static_cast<size_t>(n);
  double scale = static_cast<double>(N);
  for (int p = 1; p < N; ++p) scale *= kTwoPi / n;

  std::vector<Complex> rho(static_cast<size_t>(n), Complex(0, 0));
  for (int x = 0; x < n; ++x) {
    Complex acc(0, 0);
    const Complex* px = psi.values.data() + static_cast<size_t>(x) * rest;
    const Complex* py = phi.values.data() + static_cast<size_t>(x) * rest;
    for (size_t r = 0; r < rest; ++r) acc += std::conj(px[r]) * py[r];
    rho[static_cast<size_t>(x)] = scale * acc;
  }
  return rho;
}

double NaturalOrbitalDecomposition::occupation_sum() const {
  double s = 0.0;
  for (double v : occupations) s += v;
  return s;
}

NaturalOrbitalDecomposition natural_orbitals(
    const CMatrix& gamma, const std::vector<PeriodicFunction>& basis) {
  if (static_cast<int>(basis.size()) != gamma.n) {
    throw std::invalid_argument("basis size must match matrix dimension");
  }
  const int L = gamma.n;
  NaturalOrbitalDecomposition out;
  if (L == 0) return out;

  std::vector<Complex> a = gamma.a;
  std::vector<double> w(static_cast<size_t>(L));
  int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', L,
                            reinterpret_cast<lapack_complex_double*>(a.data()),
                            L, w.data());
  if (info != 0) {
    throw std::runtime_error("zheevd failed, info = " + std::to_string(info));
  }
  for (double occ : w) {
    if (occ < kPsdTolerance) {
      throw std::domain_error("density matrix has a negative eigenvalue: " +
                              std::to_string(occ));
    }
  }
  for (int k = L - 1; k >= 0; --k) {  // descending occupations
    double occ = w[static_cast<size_t>(k)];
    if (occ <= kOccupationFloor) continue;
    PeriodicFunction chi;
    bool first = true;
    for (int b = 0; b < L; ++b) {
      Complex u = a[static_cast<size_t>(k) * L + b];
      PeriodicFunction term = u * basis[static_cast<size_t>(b)];
      if (first) {
        chi = term;
        first = false;
      } else {
        chi += term;
      }
    }
    out.orbitals.push_back(std::move(chi));
    out.occupations.push_back(occ);
  }
  return out;
}

double Density::integral() const {
  return kSqrt2Pi * coeffs[static_cast<size_t>(cutoff)].real();
}

double Density::min_on_grid() const {
  double mn = grid.empty() ? 0.0 : grid[0];
  for (double v : grid) mn = std::min(mn, v);
  return mn;
}

PeriodicFunction Density::as_function() const {
  return PeriodicFunction(cutoff, coeffs);
}

Density density_from_grid(const std::vector<double>& values, int cutoff,
                          int particles) {
  Density rho;
  rho.cutoff = cutoff;
  rho.grid_n = static_cast<int>(values.size());
  rho.particles = particles;
  rho.grid = values;
  for (double& v : rho.grid) {
    if (v < 0.0 && v >= kDensityClampFloor) {
      v = 0.0;
      ++rho.clamp_count;
    }
  }
  std::vector<Complex> cvals(rho.grid.begin(), rho.grid.end());
  rho.coeffs = grid_to_coeffs(Grid(rho.grid_n, std::move(cvals)), cutoff).coeffs();
  return rho;
}

Density slater_density(const EigenSolution& sol, const std::vector<int>& occupied) {
  if (occupied.empty()) throw std::invalid_argument("no occupied orbitals");
  std::vector<int> occ = occupied;
  std::sort(occ.begin(), occ.end());
  for (size_t i = 0; i < occ.size(); ++i) {
    if (occ[i] < 0 || occ[i] >= sol.size()) {
      throw std::out_of_range("orbital index outside solution");
    }
    if (i > 0 && occ[i] == occ[i - 1]) {
      throw std::invalid_argument("duplicate orbital index (exclusion principle)");
    }
  }
  const int N = static_cast<int>(occ.size());
  bool aufbau = true;
  for (int i = 0; i < N; ++i) {
    if (occ[static_cast<size_t>(i)] != i) aufbau = false;
  }
  if (aufbau && N < sol.size() && sol.group_of(N - 1) == sol.group_of(N)) {
    throw std::domain_error(
        "open shell: the Fermi level is degenerate; a pure determinant "
        "density is not defined (use the ensemble route)");
  }

  const int band = 2 * sol.K;
  const int n = oversampled_grid_size(band);
  std::vector<double> vals(static_cast<size_t>(n), 0.0);
  for (int j : occ) {
    Grid g = grid_sample(sol.eigenfunctions[static_cast<size_t>(j)], n);
    for (int i = 0; i < n; ++i) {
      vals[static_cast<size_t>(i)] += std::norm(g.values[static_cast<size_t>(i)]);
    }
  }
  return density_from_grid(vals, band, N);
}

Density ensemble_density(const std::vector<SlaterState>& states,
                         const std::vector<double>& weights) {
  if (states.empty() || states.size() != weights.size()) {
    throw std::invalid_argument("states/weights size mismatch");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (w < 0.0 || w > 1.0 + 1e-12) {
      throw std::invalid_argument("ensemble weights must lie in [0, 1]");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("ensemble weights must sum to 1");
  }
  const EigenSolution* sol = states[0].solution;
  const size_t N = states[0].orbitals.size();
  for (const SlaterState& s : states) {
    if (s.solution != sol) {
      throw std::invalid_argument("ensemble members must share an eigensolution");
    }
    if (s.orbitals.size() != N) {
      throw std::invalid_argument("ensemble members must share particle number");
    }
  }

  Density acc;
  bool first = true;
  for (size_t i = 0; i < states.size(); ++i) {
    Density d = slater_density(*sol, states[i].orbitals);
    if (first) {
      acc = d;
      for (double& v : acc.grid) v *= weights[i];
      for (Complex& c : acc.coeffs) c *= weights[i];
      first = false;
    } else {
      for (size_t p = 0; p < acc.grid.size(); ++p) acc.grid[p] += weights[i] * d.grid[p];
      for (size_t p = 0; p < acc.coeffs.size(); ++p) acc.coeffs[p] += weights[i] * d.coeffs[p];
      acc.clamp_count += d.clamp_count;
    }
  }
  return acc;
}

Density ground_state_density(const EigenSolution& sol, int particles) {
  if (particles < 1 || particles > sol.size()) {
    throw std::invalid_argument("particle number out of range");
  }
  const int N = particles;
  if (N == sol.size() || sol.group_of(N - 1) != sol.group_of(N)) {
    std::vector<int> occ(static_cast<size_t>(N));
    for (int i = 0; i < N; ++i) occ[static_cast<size_t>(i)] = i;
    return slater_density(sol, occ);
  }
  // Degenerate Fermi level: uniform mixture over determinant fillings of
  // the partial shell.
  const std::vector<int>& shell =
      sol.degeneracy_groups[static_cast<size_t>(sol.group_of(N - 1))];
  const int closed = shell.front();      // orbitals 0..closed-1 are full
  const int remaining = N - closed;      // to distribute in the shell
  const int gsz = static_cast<int>(shell.size());

  std::vector<std::vector<int>> fillings;
  std::vector<int> pick;
  // enumerate combinations of `remaining` out of the shell
  std::vector<int> comb(static_cast<size_t>(remaining));
  for (int i = 0; i < remaining; ++i) comb[static_cast<size_t>(i)] = i;
  while (true) {
    std::vector<int> occ;
    for (int i = 0; i < closed; ++i) occ.push_back(i);
    for (int c : comb) occ.push_back(shell[static_cast<size_t>(c)]);
    fillings.push_back(occ);
    if (fillings.size() > 256) {
      throw std::domain_error("degenerate shell too large to enumerate");
    }
    int i = remaining - 1;
    while (i >= 0 && comb[static_cast<size_t>(i)] == gsz - remaining + i) --i;
    if (i < 0) break;
    ++comb[static_cast<size_t>(i)];
    for (int j = i + 1; j < remaining; ++j) {
      comb[static_cast<size_t>(j)] = comb[static_cast<size_t>(j - 1)] + 1;
    }
  }

  std::vector<SlaterState> states;
  states.reserve(fillings.size());
  for (const auto& occ : fillings) states.push_back(SlaterState{&sol, occ});
  std::vector<double> weights(fillings.size(), 1.0 / fillings.size());
  return ensemble_density(states, weights);
}

namespace {

PeriodicFunction overlap_formula(double occupation, const PeriodicFunction& phi_k,
                                 const PeriodicFunction& target) {
  PeriodicFunction prod = pointwise_multiply(phi_k.conjugated(), target);
  prod *= Complex(occupation, 0);
  return prod;
}

void check_orthogonal(const PeriodicFunction& orbital,
                      const PeriodicFunction& target) {
  double overlap = std::abs(inner_product(orbital, target));
  if (overlap > 1e-10 * std::max(1.0, l2_norm(target))) {
    throw std::domain_error(
        "target is not orthogonal to the natural orbitals (overlap " +
        std::to_string(overlap) + ")");
  }
}

}  // namespace

PeriodicFunction overlap_density(const SlaterState& psi, int k,
                                 const PeriodicFunction& target) {
  const EigenSolution& sol = *psi.solution;
  if (k < 0 || k >= sol.size()) throw std::out_of_range("orbital index");
  for (int j : psi.orbitals) {
    check_orthogonal(sol.eigenfunctions[static_cast<size_t>(j)], target);
  }
  bool occupied =
      std::find(psi.orbitals.begin(), psi.orbitals.end(), k) != psi.orbitals.end();
  if (!occupied) {
    return PeriodicFunction(sol.K + target.cutoff());  // a_k Psi = 0
  }
  return overlap_formula(1.0, sol.eigenfunctions[static_cast<size_t>(k)], target);
}

PeriodicFunction overlap_density(const NaturalOrbitalDecomposition& nos, int k,
                                 const PeriodicFunction& target) {
  if (k < 0 || k >= nos.rank()) throw std::out_of_range("natural orbital index");
  for (const PeriodicFunction& chi : nos.orbitals) check_orthogonal(chi, target);
  return overlap_formula(nos.occupations[static_cast<size_t>(k)],
                         nos.orbitals[static_cast<size_t>(k)], target);
}

}  // namespace torusdft
