#include "torusdft/ks.hpp"

#include <algorithm>
#include <cmath>

#include "torusdft/sampler.hpp"

namespace torusdft {

namespace {

// Coefficients of real grid values at the widest representable band,
// with the pure-roundoff tail zeroed so spectral differentiation does not
// amplify noise at the top modes.
PeriodicFunction coeffs_of_grid(const std::vector<double>& values,
                                double relative_floor) {
  const int n = static_cast<int>(values.size());
  std::vector<Complex> cvals(values.begin(), values.end());
  PeriodicFunction f = grid_to_coeffs(Grid(n, std::move(cvals)), n / 2 - 1);
  const double floor = relative_floor * f.max_abs_coeff();
  PeriodicFunction cleaned(f.cutoff());
  for (int m = -f.cutoff(); m <= f.cutoff(); ++m) {
    Complex c = f.coeff(m);
    cleaned.set_coeff(m, std::abs(c) <= floor ? Complex(0, 0) : c);
  }
  return cleaned;
}

}  // namespace

DensityReport validate_density(const Density& rho, int particles) {
  DensityReport rep;
  rep.integral = rho.integral();
  rep.min_on_grid = rho.min_on_grid();

  std::vector<double> sqrt_vals(rho.grid.size());
  for (size_t i = 0; i < rho.grid.size(); ++i) {
    sqrt_vals[i] = std::sqrt(std::max(rho.grid[i], 0.0));
  }
  std::vector<Complex> cvals(sqrt_vals.begin(), sqrt_vals.end());
  PeriodicFunction u = grid_to_coeffs(Grid(rho.grid_n, std::move(cvals)),
                                      rho.grid_n / 2 - 1);
  rep.h1_norm_of_sqrt = h1_norm(u);

  bool integral_ok = std::abs(rep.integral - particles) <= 1e-8;
  bool positive = rep.min_on_grid > 0.0;
  bool h1_finite = std::isfinite(rep.h1_norm_of_sqrt);
  if (!integral_ok) {
    rep.diagnostics.push_back("integral deviates from particle number by " +
                              std::to_string(rep.integral - particles));
  }
  if (!positive) {
    rep.diagnostics.push_back("density touches zero on the grid (min " +
                              std::to_string(rep.min_on_grid) + ")");
  }
  if (!h1_finite) {
    rep.diagnostics.push_back("sqrt(rho) has no finite H^1 norm");
  }
  if (rho.clamp_count > 0) {
    rep.diagnostics.push_back(std::to_string(rho.clamp_count) +
                              " grid values clamped up from [-1e-10, 0)");
  }
  rep.member = integral_ok && positive && h1_finite;
  return rep;
}

KsInversion ks_invert(const Density& rho) {
  if (rho.particles != 1) {
    throw std::invalid_argument(
        "the explicit density-to-potential map is single-particle only");
  }
  DensityReport rep = validate_density(rho, 1);
  if (rho.min_on_grid() <= kPositivityFloor) {
    throw std::domain_error("density is not strictly positive on the grid");
  }
  if (!rep.member) {
    std::string msg = "density is not admissible:";
    for (const std::string& d : rep.diagnostics) msg += " " + d + ";";
    throw std::domain_error(msg);
  }

  const int n = rho.grid_n;
  std::vector<double> u_vals(rho.grid.size());
  for (size_t i = 0; i < rho.grid.size(); ++i) u_vals[i] = std::sqrt(rho.grid[i]);

  PeriodicFunction u = coeffs_of_grid(u_vals, 1e-14);

  // u'' by spectral differentiation, back on the same grid
  PeriodicFunction upp(u.cutoff());
  for (int m = -u.cutoff(); m <= u.cutoff(); ++m) {
    upp.set_coeff(m, -static_cast<double>(m) * m * u.coeff(m));
  }
  Grid upp_grid = grid_sample(upp, n);

  std::vector<Complex> w(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    w[static_cast<size_t>(i)] =
        upp_grid.values[static_cast<size_t>(i)] / u_vals[static_cast<size_t>(i)];
  }
  PeriodicFunction w_fn = grid_to_coeffs(Grid(n, std::move(w)), n / 2 - 1);

  // dual coefficients d_m = conj(w_m); a truncation, not an exact band
  std::vector<Complex> dual(static_cast<size_t>(w_fn.size()));
  for (int m = -w_fn.cutoff(); m <= w_fn.cutoff(); ++m) {
    dual[static_cast<size_t>(m + w_fn.cutoff())] = std::conj(w_fn.coeff(m));
  }
  KsInversion inv;
  inv.v = Potential(w_fn.cutoff(), std::move(dual), {}, false);
  inv.ground = u;

  // Weak identity at energy zero: q(u, e_m) = m^2 u_{-m} + v(u e_m) = 0.
  const int Kv = inv.v.cutoff();
  double worst = 0.0;
  for (int m = -rho.cutoff; m <= rho.cutoff; ++m) {
    Complex r = static_cast<double>(m) * m * u.coeff(-m);
    int jlo = std::max(m - u.cutoff(), -Kv);
    int jhi = std::min(m + u.cutoff(), Kv);
    for (int j = jlo; j <= jhi; ++j) {
      r += kInvSqrt2Pi * u.coeff(j - m) * inv.v.dual_coeff(j);
    }
    worst = std::max(worst, std::abs(r) / std::sqrt(1.0 + static_cast<double>(m) * m));
  }
  inv.weak_residual = worst;
  return inv;
}

PotentialDistance compare_up_to_constant(const Potential& v, const Potential& w,
                                         int M) {
  Potential fv = v.folded(M);
  Potential fw = w.folded(M);
  PotentialDistance dist;
  double raw_sq = 0.0;
  double adj_sq = 0.0;
  for (int m = -M; m <= M; ++m) {
    double term = std::norm(fv.dual_coeff(m) - fw.dual_coeff(m)) /
                  (1.0 + static_cast<double>(m) * m);
    raw_sq += term;
    if (m != 0) adj_sq += term;
  }
  dist.raw = std::sqrt(raw_sq);
  dist.adjusted = std::sqrt(adj_sq);
  dist.offset = (fv.dual_coeff(0) - fw.dual_coeff(0)).real() / kSqrt2Pi;
  return dist;
}

RoundtripReport hk_roundtrip(const Potential& v, int K, double tol) {
  RoundtripReport rep;
  rep.K = K;
  rep.tolerance = tol;
  rep.delta_bearing = v.has_deltas();

  EigenSolution sol = eigensolve(assemble_hamiltonian(v, K));
  rep.lambda1 = sol.eigenvalues[0];
  Density rho = slater_density(sol, {0});
  rep.density_report = validate_density(rho, 1);

  KsInversion inv = ks_invert(rho);
  rep.weak_residual = inv.weak_residual;
  rep.distance =
      compare_up_to_constant(v - Potential::constant(rep.lambda1), inv.v, 2 * K);

  EigenSolution sol_rec = eigensolve(assemble_hamiltonian(inv.v, K));
  rep.recovered_ground_energy = sol_rec.eigenvalues[0];
  Density rho_rec = slater_density(sol_rec, {0});
  rep.density_l2_error = l2_norm(rho.as_function() - rho_rec.as_function());

  rep.passed = rep.delta_bearing
                   ? rep.density_l2_error <= tol
                   : (rep.distance.adjusted <= tol && rep.density_l2_error <= tol);
  return rep;
}

ScanReport hk_injectivity_scan(const ScanConfig& config) {
  ScanReport rep;
  rep.config = config;
  std::mt19937_64 rng(config.seed);
  SamplerConfig sampler;
  sampler.smooth_amplitude = config.smooth_amplitude;
  sampler.delta_amplitude = config.delta_amplitude;
  std::uniform_real_distribution<double> shift(0.5, 5.0);

  const int M = 2 * config.K;
  double min_density = std::numeric_limits<double>::infinity();
  double max_gauge = 0.0;
  for (int p = 0; p < config.pairs; ++p) {
    Potential v = sample_potential(rng, sampler);
    Potential w = sample_potential(rng, sampler);
    double sep = compare_up_to_constant(v, w, M).adjusted;
    int guard = 0;
    while (sep < config.min_separation && ++guard < 100) {
      w = sample_potential(rng, sampler);
      sep = compare_up_to_constant(v, w, M).adjusted;
    }
    if (sep < config.min_separation) {
      throw std::runtime_error("sampler failed to produce a separated pair");
    }

    EigenSolution sv = eigensolve(assemble_hamiltonian(v, config.K));
    EigenSolution sw = eigensolve(assemble_hamiltonian(w, config.K));
    Density dv = ground_state_density(sv, config.particles);
    Density dw = ground_state_density(sw, config.particles);

    ScanPair pair;
    pair.separation = sep;
    pair.density_distance = l2_norm(dv.as_function() - dw.as_function());

    double c = shift(rng);
    EigenSolution sg = eigensolve(assemble_hamiltonian(v + Potential::constant(c),
                                                       config.K));
    Density dg = ground_state_density(sg, config.particles);
    pair.gauge_distance = l2_norm(dv.as_function() - dg.as_function());

    min_density = std::min(min_density, pair.density_distance);
    max_gauge = std::max(max_gauge, pair.gauge_distance);
    rep.pairs.push_back(pair);
  }
  rep.min_density_distance = min_density;
  rep.max_gauge_distance = max_gauge;
  rep.passed = min_density > 1e-8 && max_gauge <= 1e-10;
  return rep;
}

}  // namespace torusdft
