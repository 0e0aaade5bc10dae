#pragma once

// Seeded random potentials covering both the smooth and the singular ends
// of the admissible class: Gaussian dual coefficients with variance
// decaying as 1/(1+m^2) up to a fixed mode, plus Bernoulli-selected
// Dirac deltas.

#include <cstdint>
#include <random>

#include "torusdft/fourier.hpp"

namespace torusdft {

struct SamplerConfig {
  double smooth_amplitude = 5.0;  // scale of the Gaussian coefficients
  int smooth_max_mode = 16;
  double delta_amplitude = 5.0;   // weights drawn uniformly in [-B, B]
  int max_deltas = 3;             // each slot present with probability 1/2
};

Potential sample_potential(std::mt19937_64& rng, const SamplerConfig& config);

}  // namespace torusdft
