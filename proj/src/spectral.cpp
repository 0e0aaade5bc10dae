#include "torusdft/spectral.hpp"

#include <cblas.h>
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <random>

namespace torusdft {

namespace {

// Support of a realified basis vector in plane-wave index space:
// index 0      -> e_0
// index 2m-1   -> (e_m + e_{-m}) / sqrt(2)            (cosine mode)
// index 2m     -> (e_m - e_{-m}) / (i sqrt(2))        (sine mode)
struct BasisSupport {
  int idx[2];
  Complex t[2];
  int count;
};

BasisSupport realified_basis_vector(int a, int K) {
  constexpr double inv_sqrt2 = 0.70710678118654752440;
  BasisSupport s{};
  if (a == 0) {
    s.idx[0] = K;
    s.t[0] = Complex(1, 0);
    s.count = 1;
    return s;
  }
  int m = (a + 1) / 2;
  s.idx[0] = K + m;
  s.idx[1] = K - m;
  if (a % 2 == 1) {  // cosine
    s.t[0] = Complex(inv_sqrt2, 0);
    s.t[1] = Complex(inv_sqrt2, 0);
  } else {  // sine
    s.t[0] = Complex(0, -inv_sqrt2);
    s.t[1] = Complex(0, inv_sqrt2);
  }
  s.count = 2;
  return s;
}

void fix_sign(PeriodicFunction& phi, bool is_ground) {
  const double scale = phi.max_abs_coeff();
  if (scale == 0.0) return;
  if (is_ground) {
    Complex c0 = phi.coeff(0);
    if (std::abs(c0) > 1e-12 * scale) {
      if (c0.real() < 0.0) phi *= Complex(-1, 0);
      return;
    }
  }
  for (int m = 0; m <= phi.cutoff(); ++m) {
    Complex c = phi.coeff(m);
    if (std::abs(c) <= 1e-12 * scale) continue;
    double lead = (std::abs(c.real()) > 1e-12 * std::abs(c)) ? c.real() : c.imag();
    if (lead < 0.0) phi *= Complex(-1, 0);
    return;
  }
}

}  // namespace

double GalerkinOperator::hermiticity_defect() const {
  const int n = dim();
  double defect = 0.0;
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j <= k; ++j) {
      defect = std::max(defect, std::abs(entry(j, k) - std::conj(entry(k, j))));
    }
  }
  return defect;
}

double GalerkinOperator::conj_symmetry_defect() const {
  const int n = dim();
  double defect = 0.0;
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      Complex a = entry(j, k);
      Complex b = entry(n - 1 - j, n - 1 - k);
      defect = std::max(defect, std::abs(b - std::conj(a)));
    }
  }
  return defect;
}

GalerkinOperator assemble_hamiltonian(const Potential& v, int K) {
  if (K < 1) throw std::invalid_argument("assemble_hamiltonian: K must be >= 1");
  if (!v.is_real()) {
    throw std::domain_error(
        "potential violates realness (not a member of the admissible class); "
        "defect = " + std::to_string(v.realness_defect()));
  }
  // Folding the deltas at 2K makes every matrix element of the truncated
  // form exact: the form only probes products conj(e_j) e_k with |j-k| <= 2K.
  Potential folded = v.folded(2 * K);

  GalerkinOperator op;
  op.K = K;
  const int n = 2 * K + 1;
  op.H.assign(static_cast<size_t>(n) * n, Complex(0, 0));
  for (int k = 0; k < n; ++k) {
    const int mk = k - K;
    for (int j = 0; j < n; ++j) {
      const int mj = j - K;
      Complex val = kInvSqrt2Pi * folded.dual_coeff(mk - mj);
      if (j == k) val += static_cast<double>(mk) * mk;
      op.H[static_cast<size_t>(k) * n + j] = val;
    }
  }
  return op;
}

int EigenSolution::group_of(int k) const {
  for (size_t g = 0; g < degeneracy_groups.size(); ++g) {
    for (int idx : degeneracy_groups[g]) {
      if (idx == k) return static_cast<int>(g);
    }
  }
  throw std::out_of_range("eigenvalue index outside solution");
}

int EigenSolution::counting_function(int k) const {
  const std::vector<int>& grp = degeneracy_groups[static_cast<size_t>(group_of(k))];
  return grp.back() + 1;
}

EigenSolution eigensolve(const GalerkinOperator& op) {
  const int n = op.dim();
  const int K = op.K;
  if (op.hermiticity_defect() > 1e-12) {
    throw std::domain_error("assembled matrix is not Hermitian within 1e-12");
  }

  // The potential class commutes with complex conjugation, so the matrix is
  // real symmetric in the realified basis {1, cos, sin}. Solving there makes
  // every eigenfunction real-valued by construction, degenerate groups
  // included.
  std::vector<double> hr(static_cast<size_t>(n) * n, 0.0);
  for (int b = 0; b < n; ++b) {
    BasisSupport sb = realified_basis_vector(b, K);
    for (int a = 0; a < n; ++a) {
      BasisSupport sa = realified_basis_vector(a, K);
      Complex acc(0, 0);
      for (int p = 0; p < sa.count; ++p) {
        for (int q = 0; q < sb.count; ++q) {
          acc += std::conj(sa.t[p]) * op.entry(sa.idx[p], sb.idx[q]) * sb.t[q];
        }
      }
      hr[static_cast<size_t>(b) * n + a] = acc.real();
    }
  }

  std::vector<double> w(static_cast<size_t>(n));
  std::vector<double> y = hr;  // dsyevd overwrites with eigenvectors
  int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, y.data(), n, w.data());
  if (info != 0) {
    throw std::runtime_error("dsyevd failed to converge, info = " +
                             std::to_string(info));
  }

  EigenSolution sol;
  sol.K = K;
  sol.eigenvalues = w;

  // Residual R = Hr Y - Y diag(w), column norms scaled by 1/(1+|lam|).
  {
    std::vector<double> r(static_cast<size_t>(n) * n, 0.0);
    cblas_dgemm(CblasColMajor, CblasNoTrans, CblasNoTrans, n, n, n, 1.0,
                hr.data(), n, y.data(), n, 0.0, r.data(), n);
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) {
        double d = r[static_cast<size_t>(k) * n + j] -
                   w[static_cast<size_t>(k)] * y[static_cast<size_t>(k) * n + j];
        s += d * d;
      }
      worst = std::max(worst, std::sqrt(s) / (1.0 + std::abs(w[static_cast<size_t>(k)])));
    }
    sol.max_scaled_residual = worst;
  }
  // Orthonormality defect from G = Y^T Y.
  {
    std::vector<double> g(static_cast<size_t>(n) * n, 0.0);
    cblas_dgemm(CblasColMajor, CblasTrans, CblasNoTrans, n, n, n, 1.0,
                y.data(), n, y.data(), n, 0.0, g.data(), n);
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
      for (int j = 0; j < n; ++j) {
        double target = (j == k) ? 1.0 : 0.0;
        worst = std::max(worst,
                         std::abs(g[static_cast<size_t>(k) * n + j] - target));
      }
    }
    sol.max_ortho_defect = worst;
  }

  // Map eigenvectors back to plane-wave coefficients. The conjugate
  // symmetry c_{-m} = conj(c_m) is exact by construction.
  sol.eigenfunctions.reserve(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double* col = y.data() + static_cast<size_t>(k) * n;
    PeriodicFunction phi(K);
    phi.set_coeff(0, Complex(col[0], 0));
    constexpr double inv_sqrt2 = 0.70710678118654752440;
    for (int m = 1; m <= K; ++m) {
      Complex cm(col[2 * m - 1] * inv_sqrt2, -col[2 * m] * inv_sqrt2);
      phi.set_coeff(m, cm);
      phi.set_coeff(-m, std::conj(cm));
    }
    sol.eigenfunctions.push_back(std::move(phi));
  }

  // Degeneracy clustering (chained): |lam_i - lam_j| <= tol*(1+|lam_i|).
  std::vector<std::vector<int>> groups;
  for (int k = 0; k < n; ++k) {
    if (!groups.empty()) {
      double prev = w[static_cast<size_t>(k - 1)];
      if (std::abs(w[static_cast<size_t>(k)] - prev) <=
          kDegeneracyTol * (1.0 + std::abs(prev))) {
        groups.back().push_back(k);
        continue;
      }
    }
    groups.push_back({k});
  }
  sol.degeneracy_groups = std::move(groups);

  for (int k = 0; k < n; ++k) {
    fix_sign(sol.eigenfunctions[static_cast<size_t>(k)], k == 0);
  }
  return sol;
}

double spectral_gap(const EigenSolution& sol) {
  if (sol.size() < 2) throw std::invalid_argument("spectral_gap: need >= 2 eigenvalues");
  return sol.eigenvalues[1] - sol.eigenvalues[0];
}

KlmnReport klmn_check(const Potential& v, double epsilon, int trials, int K,
                      uint64_t seed) {
  if (epsilon <= 0.0) throw std::invalid_argument("klmn_check: epsilon must be > 0");
  KlmnReport rep;
  rep.epsilon = epsilon;
  rep.trials = trials;
  const double c1 = 2.0 * kProductEstimateConstant;
  // From Young's inequality: c1 x^{3/2} y^{1/2} <= eps x^2 + (27/256) c1^4 / eps^3 y^2.
  rep.c_effective = (27.0 / 256.0) * std::pow(c1, 4) / (epsilon * epsilon);
  rep.dual_norm_v = dual_norm(v, 2 * K);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double max_ratio = 0.0;
  for (int t = 0; t < trials; ++t) {
    PeriodicFunction phi(K);
    for (int m = -K; m <= K; ++m) {
      phi.set_coeff(m, Complex(gauss(rng), gauss(rng)));
    }
    PeriodicFunction sq = pointwise_multiply(phi.conjugated(), phi);
    double lhs = std::abs(apply_potential(v, sq));
    double rhs = rep.dual_norm_v *
                 (epsilon * h1_norm(phi) * h1_norm(phi) +
                  rep.c_effective / epsilon * l2_norm(phi) * l2_norm(phi));
    double ratio = (rhs == 0.0) ? 0.0 : lhs / rhs;
    max_ratio = std::max(max_ratio, ratio);
  }
  rep.max_ratio = max_ratio;
  return rep;
}

DualRepresentation eigenbasis_dual_coefficients(const Potential& f,
                                                const EigenSolution& sol) {
  DualRepresentation rep;
  rep.coefficients.reserve(static_cast<size_t>(sol.size()));
  const double lam1 = sol.eigenvalues.empty() ? 0.0 : sol.eigenvalues[0];
  for (int j = 0; j < sol.size(); ++j) {
    Complex cj = apply_potential(f, sol.eigenfunctions[static_cast<size_t>(j)]);
    rep.coefficients.push_back(cj);
    rep.weighted_sum +=
        std::norm(cj) / (1.0 - lam1 + sol.eigenvalues[static_cast<size_t>(j)]);
  }
  return rep;
}

Complex dual_reconstruct(const DualRepresentation& rep, const EigenSolution& sol,
                         const PeriodicFunction& phi) {
  Complex acc(0, 0);
  for (int j = 0; j < sol.size(); ++j) {
    acc += rep.coefficients[static_cast<size_t>(j)] *
           inner_product(sol.eigenfunctions[static_cast<size_t>(j)], phi);
  }
  return acc;
}

}  // namespace torusdft
