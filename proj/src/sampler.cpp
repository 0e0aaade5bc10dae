#include "torusdft/sampler.hpp"

#include <cmath>

namespace torusdft {

Potential sample_potential(std::mt19937_64& rng, const SamplerConfig& config) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const int M = config.smooth_max_mode;
  std::vector<Complex> dual(static_cast<size_t>(2 * M + 1), Complex(0, 0));
  dual[static_cast<size_t>(M)] = Complex(config.smooth_amplitude * gauss(rng), 0);
  for (int m = 1; m <= M; ++m) {
    double scale = config.smooth_amplitude /
                   std::sqrt(2.0 * (1.0 + static_cast<double>(m) * m));
    Complex d(scale * gauss(rng), scale * gauss(rng));
    dual[static_cast<size_t>(M + m)] = d;
    dual[static_cast<size_t>(M - m)] = std::conj(d);
  }

  std::vector<DeltaTerm> deltas;
  for (int slot = 0; slot < config.max_deltas; ++slot) {
    if (unit(rng) < 0.5) {
      double x0 = unit(rng) * kTwoPi;
      double alpha = (2.0 * unit(rng) - 1.0) * config.delta_amplitude;
      deltas.push_back(DeltaTerm{x0, alpha});
    }
  }
  return Potential(M, std::move(dual), std::move(deltas), true);
}

}  // namespace torusdft
