#include "torusdft/lab.hpp"

#include <algorithm>
#include <cmath>

namespace torusdft {

bool LabReport::all_passed() const {
  for (const LabAssertion& a : assertions) {
    if (!a.passed) return false;
  }
  return true;
}

PositivityResult positivity_check(const EigenSolution& sol, int n) {
  Grid g = grid_sample(sol.eigenfunctions[0], n);
  PositivityResult res;
  res.min_value = g.values[0].real();
  res.argmin = 0.0;
  for (int i = 1; i < n; ++i) {
    double v = g.values[static_cast<size_t>(i)].real();
    if (v < res.min_value) {
      res.min_value = v;
      res.argmin = g.point(i);
    }
  }
  return res;
}

int nodal_domain_count(const PeriodicFunction& phi, int n) {
  Grid g = grid_sample(phi, n);
  double max_abs = 0.0;
  for (const Complex& v : g.values) max_abs = std::max(max_abs, std::abs(v.real()));
  if (max_abs == 0.0) {
    throw std::domain_error("nodal count undefined for the zero function");
  }
  const double floor = 1e-9 * max_abs;
  std::vector<int> signs;
  signs.reserve(static_cast<size_t>(n));
  for (const Complex& v : g.values) {
    double x = v.real();
    if (std::abs(x) > floor) signs.push_back(x > 0 ? 1 : -1);
  }
  if (signs.empty()) {
    throw std::domain_error("nodal count undefined: all samples near zero");
  }
  int transitions = 0;
  for (size_t i = 0; i < signs.size(); ++i) {
    if (signs[i] != signs[(i + 1) % signs.size()]) ++transitions;
  }
  return transitions == 0 ? 1 : transitions;
}

double delta_ground_energy_oracle(double alpha) {
  if (alpha <= 0.0) {
    throw std::invalid_argument(
        "oracle covers alpha > 0 only (the bound-state branch is separate)");
  }
  auto f = [alpha](double e) {
    double s = std::sqrt(e);
    return s * std::tan(M_PI * s) - 0.5 * alpha;
  };
  double lo = 1e-300;
  double hi = 0.25 - 1e-16;
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    double mid = 0.5 * (lo + hi);
    if (f(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

ZeroLocation find_zero(const PeriodicFunction& phi, int scan_n) {
  Grid g = grid_sample(phi, scan_n);
  std::vector<double> vals(static_cast<size_t>(scan_n));
  double max_abs = 0.0;
  for (int i = 0; i < scan_n; ++i) {
    vals[static_cast<size_t>(i)] = g.values[static_cast<size_t>(i)].real();
    max_abs = std::max(max_abs, std::abs(vals[static_cast<size_t>(i)]));
  }
  ZeroLocation out;
  if (max_abs == 0.0) return out;

  auto eval = [&phi](double x) { return phi.evaluate(x).real(); };
  auto polish = [&](double x) {
    PeriodicFunction dphi = phi.derivative();
    double best_x = x;
    double best_v = std::abs(eval(x));
    for (int it = 0; it < 6; ++it) {
      double d = dphi.evaluate(x).real();
      if (std::abs(d) < 1e-14 * max_abs) break;
      x -= eval(x) / d;
      double v = std::abs(eval(x));
      if (v < best_v) {
        best_v = v;
        best_x = x;
      }
    }
    double wrapped = std::fmod(best_x, kTwoPi);
    if (wrapped < 0) wrapped += kTwoPi;
    out.x = wrapped;
    out.value = best_v;
    out.found = true;
  };

  // direct hit on a grid point
  for (int i = 0; i < scan_n; ++i) {
    if (std::abs(vals[static_cast<size_t>(i)]) <= 1e-13 * max_abs) {
      polish(g.point(i));
      return out;
    }
  }
  // sign change + bisection to 1e-12 in x
  for (int i = 0; i < scan_n; ++i) {
    double a = vals[static_cast<size_t>(i)];
    double b = vals[static_cast<size_t>((i + 1) % scan_n)];
    if (a * b < 0.0) {
      double xa = g.point(i);
      double xb = xa + kTwoPi / scan_n;
      for (int it = 0; it < 100 && xb - xa > 1e-12; ++it) {
        double mid = 0.5 * (xa + xb);
        if (eval(mid) * a <= 0.0) {
          xb = mid;
        } else {
          xa = mid;
        }
      }
      polish(0.5 * (xa + xb));
      return out;
    }
  }
  return out;
}

namespace {

void add_param(LabReport& rep, const std::string& key, double value) {
  rep.parameters.emplace_back(key, value);
}

}  // namespace

LabReport excited_delta_experiment(const Potential& v, int k,
                                   const std::vector<double>& alphas, int K) {
  if (k < 1) {
    throw std::invalid_argument("excited-state experiment needs k >= 1");
  }
  LabReport rep;
  rep.experiment = "excited-delta";
  add_param(rep, "K", K);
  add_param(rep, "k", k);

  EigenSolution sol = eigensolve(assemble_hamiltonian(v, K));
  const PeriodicFunction& phi = sol.eigenfunctions[static_cast<size_t>(k)];
  const double lambda = sol.eigenvalues[static_cast<size_t>(k)];
  add_param(rep, "lambda_k", lambda);

  ZeroLocation zero = find_zero(phi, 8 * K);
  rep.assertions.push_back(LabAssertion{
      "eigenfunction-has-zero", zero.found, zero.found ? zero.value : -1.0, 0.0});
  if (!zero.found) return rep;  // falsification flag, nothing to perturb
  add_param(rep, "x0", zero.x);

  rep.sample_columns = {"alpha", "scaled_residual", "rank_in_perturbed",
                        "eigenvalue_shift_at_rank"};
  const int n = sol.size();
  double worst = 0.0;
  for (double alpha : alphas) {
    Potential va = v + Potential::delta(zero.x, alpha);
    GalerkinOperator op = assemble_hamiltonian(va, K);
    double res_sq = 0.0;
    for (int j = 0; j < n; ++j) {
      Complex r(0, 0);
      for (int c = 0; c < n; ++c) r += op.entry(j, c) * phi.coeff(c - K);
      r -= lambda * phi.coeff(j - K);
      res_sq += std::norm(r);
    }
    double scaled = std::sqrt(res_sq) / (1.0 + std::abs(lambda));
    worst = std::max(worst, scaled);

    EigenSolution pert = eigensolve(op);
    int rank = 0;
    double best_overlap = 0.0;
    for (int j = 0; j < n; ++j) {
      double ov = std::abs(inner_product(pert.eigenfunctions[static_cast<size_t>(j)], phi));
      if (ov > best_overlap) {
        best_overlap = ov;
        rank = j;
      }
    }
    rep.samples.push_back({alpha, scaled, static_cast<double>(rank + 1),
                           pert.eigenvalues[static_cast<size_t>(rank)] - lambda});
  }
  rep.assertions.push_back(
      LabAssertion{"residual", worst <= 1e-10 * (1.0 + std::abs(lambda)), worst,
                   1e-10 * (1.0 + std::abs(lambda))});
  return rep;
}

LabReport run_positivity_ensemble(uint64_t seed, int count, int K,
                                  const SamplerConfig& config) {
  LabReport rep;
  rep.experiment = "positivity";
  add_param(rep, "seed", static_cast<double>(seed));
  add_param(rep, "count", count);
  add_param(rep, "K", K);
  rep.sample_columns = {"min_ground", "argmin", "gap"};

  std::mt19937_64 rng(seed);
  const int n = oversampled_grid_size(K);
  double worst_min = std::numeric_limits<double>::infinity();
  double worst_gap = std::numeric_limits<double>::infinity();
  for (int s = 0; s < count; ++s) {
    Potential v = sample_potential(rng, config);
    EigenSolution sol = eigensolve(assemble_hamiltonian(v, K));
    PositivityResult pos = positivity_check(sol, n);
    double gap = spectral_gap(sol);
    worst_min = std::min(worst_min, pos.min_value);
    worst_gap = std::min(worst_gap, gap);
    rep.samples.push_back({pos.min_value, pos.argmin, gap});
  }
  rep.assertions.push_back(
      LabAssertion{"ground-state-positive", worst_min > 0.0, worst_min, 0.0});
  rep.assertions.push_back(
      LabAssertion{"gap-positive", worst_gap > 0.0, worst_gap, 0.0});
  return rep;
}

LabReport run_gap_ensemble(uint64_t seed, int count, int K,
                           const SamplerConfig& config) {
  LabReport rep;
  rep.experiment = "gap";
  add_param(rep, "seed", static_cast<double>(seed));
  add_param(rep, "count", count);
  add_param(rep, "K", K);
  rep.sample_columns = {"lambda1", "gap"};

  std::mt19937_64 rng(seed);
  double worst_gap = std::numeric_limits<double>::infinity();
  for (int s = 0; s < count; ++s) {
    Potential v = sample_potential(rng, config);
    EigenSolution sol = eigensolve(assemble_hamiltonian(v, K));
    double gap = spectral_gap(sol);
    worst_gap = std::min(worst_gap, gap);
    rep.samples.push_back({sol.eigenvalues[0], gap});
  }
  rep.assertions.push_back(
      LabAssertion{"gap-positive", worst_gap > 0.0, worst_gap, 0.0});
  return rep;
}

LabReport run_courant_ensemble(uint64_t seed, int count, int K, int kmax,
                               const SamplerConfig& config) {
  LabReport rep;
  rep.experiment = "courant";
  add_param(rep, "seed", static_cast<double>(seed));
  add_param(rep, "count", count);
  add_param(rep, "K", K);
  add_param(rep, "kmax", kmax);
  rep.sample_columns = {"max_excess", "worst_k", "ground_domains"};

  std::mt19937_64 rng(seed);
  int violations = 0;
  bool ground_always_one = true;
  for (int s = 0; s < count; ++s) {
    Potential v = sample_potential(rng, config);
    EigenSolution sol = eigensolve(assemble_hamiltonian(v, K));
    int max_excess = std::numeric_limits<int>::min();
    int worst_k = 0;
    int ground_domains = 0;
    for (int k = 0; k < std::min(kmax, sol.size()); ++k) {
      int domains = nodal_domain_count(sol.eigenfunctions[static_cast<size_t>(k)], 8 * K);
      if (k == 0) {
        ground_domains = domains;
        if (domains != 1) ground_always_one = false;
      }
      int excess = domains - sol.counting_function(k);
      if (excess > max_excess) {
        max_excess = excess;
        worst_k = k;
      }
    }
    if (max_excess > 0) ++violations;
    rep.samples.push_back({static_cast<double>(max_excess),
                           static_cast<double>(worst_k + 1),
                           static_cast<double>(ground_domains)});
  }
  rep.assertions.push_back(LabAssertion{"count-bounded-by-n-lambda",
                                        violations == 0,
                                        static_cast<double>(violations), 0.0});
  rep.assertions.push_back(LabAssertion{"ground-state-one-domain",
                                        ground_always_one,
                                        ground_always_one ? 1.0 : 0.0, 1.0});
  return rep;
}

LabReport run_delta_oracle_experiment(const std::vector<double>& alphas,
                                      int K_fine, int K_coarse) {
  LabReport rep;
  rep.experiment = "delta-oracle";
  add_param(rep, "K_fine", K_fine);
  add_param(rep, "K_coarse", K_coarse);
  rep.sample_columns = {"alpha", "oracle_E", "lambda1_fine", "rel_err_fine",
                        "rel_err_coarse"};

  double worst_fine = 0.0;
  bool monotone = true;
  for (double alpha : alphas) {
    double e = delta_ground_energy_oracle(alpha);
    Potential v = Potential::delta(0.0, alpha);
    double lam_fine =
        eigensolve(assemble_hamiltonian(v, K_fine)).eigenvalues[0];
    double lam_coarse =
        eigensolve(assemble_hamiltonian(v, K_coarse)).eigenvalues[0];
    double err_fine = std::abs(lam_fine - e) / e;
    double err_coarse = std::abs(lam_coarse - e) / e;
    worst_fine = std::max(worst_fine, err_fine);
    if (err_fine >= err_coarse) monotone = false;
    rep.samples.push_back({alpha, e, lam_fine, err_fine, err_coarse});
  }
  rep.assertions.push_back(
      LabAssertion{"fine-relative-error", worst_fine <= 1e-3, worst_fine, 1e-3});
  rep.assertions.push_back(LabAssertion{"error-shrinks-with-refinement",
                                        monotone, monotone ? 1.0 : 0.0, 1.0});
  return rep;
}

LabReport run_gns_sweep(uint64_t seed, int count, int K) {
  LabReport rep;
  rep.experiment = "gns";
  add_param(rep, "seed", static_cast<double>(seed));
  add_param(rep, "count", count);
  add_param(rep, "K", K);
  rep.sample_columns = {"ratio"};

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int n = std::max(8 * K, 64);
  double worst = 0.0;
  for (int s = 0; s < count; ++s) {
    PeriodicFunction f(K);
    for (int m = -K; m <= K; ++m) f.set_coeff(m, Complex(gauss(rng), gauss(rng)));
    double bound = 2.0 * std::sqrt(l2_norm(f)) * std::sqrt(h1_norm(f));
    double ratio = linf_norm(f, n) / bound;
    worst = std::max(worst, ratio);
    rep.samples.push_back({ratio});
  }
  rep.assertions.push_back(
      LabAssertion{"sup-norm-interpolation-bound", worst <= 1.0, worst, 1.0});
  return rep;
}

LabReport run_klmn_experiment(uint64_t seed, int potentials, int trials,
                              double epsilon, int K, const SamplerConfig& config) {
  LabReport rep;
  rep.experiment = "klmn";
  add_param(rep, "seed", static_cast<double>(seed));
  add_param(rep, "potentials", potentials);
  add_param(rep, "trials", trials);
  add_param(rep, "epsilon", epsilon);
  add_param(rep, "K", K);
  rep.sample_columns = {"dual_norm", "max_ratio"};

  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int s = 0; s < potentials; ++s) {
    Potential v = sample_potential(rng, config);
    KlmnReport kr = klmn_check(v, epsilon, trials, K, rng());
    worst = std::max(worst, kr.max_ratio);
    rep.samples.push_back({kr.dual_norm_v, kr.max_ratio});
  }
  rep.assertions.push_back(
      LabAssertion{"form-bound-holds", worst <= 1.0, worst, 1.0});
  return rep;
}

}  // namespace torusdft
