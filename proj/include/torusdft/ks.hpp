#pragma once

// Density-side machinery: admissibility reports, the single-particle
// density-to-potential inversion v = (sqrt(rho))'' / sqrt(rho), comparison
// of potentials modulo additive constants, and roundtrip / injectivity
// experiments.

#include <cstdint>
#include <string>
#include <vector>

#include "torusdft/manybody.hpp"

namespace torusdft {

// Grid positivity floor separating genuine zeros from roundoff before the
// division by sqrt(rho).
inline constexpr double kPositivityFloor = 1e-8;

struct DensityReport {
  double integral = 0.0;
  double min_on_grid = 0.0;
  double h1_norm_of_sqrt = 0.0;
  bool member = false;  // all three admissibility conditions hold
  std::vector<std::string> diagnostics;
};

// Admissibility: |integral - N| <= 1e-8, grid minimum > 0, finite H^1 norm
// of sqrt(rho). Report only, never throws.
DensityReport validate_density(const Density& rho, int particles);

struct KsInversion {
  Potential v;              // dual coefficients of u''/u; no deltas
  PeriodicFunction ground;  // u = sqrt(rho), band-limited coefficients
  // max_m |m^2 u_{-m} + (2 pi)^{-1/2} sum_j u_{j-m} d_j| / sqrt(1+m^2)
  // over |m| <= cutoff of rho: the weak eigenvalue identity at energy 0.
  double weak_residual = 0.0;
};

// Single-particle inversion. Requires particles == 1, admissibility, and a
// grid minimum above the positivity floor. The returned potential has
// ground energy 0 by construction; compare against references through
// compare_up_to_constant.
KsInversion ks_invert(const Density& rho);

struct PotentialDistance {
  double raw = 0.0;       // dual norm of v - w at the stated cutoff
  double adjusted = 0.0;  // dual norm of v - w - c*1
  double offset = 0.0;    // c = (d_0(v) - d_0(w)) / sqrt(2 pi)
};

PotentialDistance compare_up_to_constant(const Potential& v, const Potential& w,
                                         int M);

struct RoundtripReport {
  int K = 0;
  double lambda1 = 0.0;
  DensityReport density_report;
  PotentialDistance distance;       // v - lambda1*1  vs  recovered
  double density_l2_error = 0.0;    // input density vs density of recovered v
  double recovered_ground_energy = 0.0;
  double weak_residual = 0.0;
  double tolerance = 0.0;
  bool delta_bearing = false;
  bool passed = false;
};

// Pipeline: solve -> rho = phi_1^2 -> validate -> invert -> compare.
// Smooth potentials pass on the constant-adjusted distance; delta-bearing
// potentials are judged on density agreement instead, since a truncation
// cannot be told apart from the delta it approximates.
RoundtripReport hk_roundtrip(const Potential& v, int K, double tol = 1e-6);

struct ScanConfig {
  uint64_t seed = 1;
  int pairs = 50;
  int particles = 2;
  int K = 64;
  double min_separation = 0.1;  // constant-adjusted distance between pair members
  double smooth_amplitude = 5.0;
  double delta_amplitude = 5.0;
};

struct ScanPair {
  double separation = 0.0;        // constant-adjusted potential distance
  double density_distance = 0.0;  // L2 distance of ground densities
  double gauge_distance = 0.0;    // density distance between v and v + c
};

struct ScanReport {
  ScanConfig config;
  std::vector<ScanPair> pairs;
  double min_density_distance = 0.0;
  double max_gauge_distance = 0.0;
  bool passed = false;  // min > 1e-8 and gauge <= 1e-10
};

// Statistical falsification gate: distinct-mod-constants potentials must
// produce distinct ground-state densities; gauge shifts must not.
ScanReport hk_injectivity_scan(const ScanConfig& config);

}  // namespace torusdft
