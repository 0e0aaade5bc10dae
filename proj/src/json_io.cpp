#include "torusdft/json_io.hpp"

#include <bit>
#include <cmath>
#include <sstream>

namespace torusdft {

using nlohmann::json;

namespace {

json complex_pair(Complex c) { return json::array({c.real(), c.imag()}); }

Complex pair_to_complex(const json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw std::invalid_argument("coefficient must be a [re, im] pair");
  }
  return Complex(j[0].get<double>(), j[1].get<double>());
}

}  // namespace

json to_json(const PeriodicFunction& f) {
  json coeffs = json::array();
  for (int m = -f.cutoff(); m <= f.cutoff(); ++m) {
    coeffs.push_back(complex_pair(f.coeff(m)));
  }
  return json{{"K", f.cutoff()}, {"coeffs", coeffs}};
}

PeriodicFunction function_from_json(const json& j) {
  int K = j.at("K").get<int>();
  const json& coeffs = j.at("coeffs");
  if (K < 0 || !coeffs.is_array() ||
      coeffs.size() != static_cast<size_t>(2 * K + 1)) {
    throw std::invalid_argument("function JSON needs 2K+1 coefficients");
  }
  PeriodicFunction f(K);
  for (int m = -K; m <= K; ++m) {
    f.set_coeff(m, pair_to_complex(coeffs[static_cast<size_t>(m + K)]));
  }
  return f;
}

json to_json(const Potential& v) {
  json fourier = json::array();
  for (int m = -v.cutoff(); m <= v.cutoff(); ++m) {
    Complex d = v.dual_coeff(m);
    fourier.push_back(json{{"m", m}, {"re", d.real()}, {"im", d.imag()}});
  }
  json deltas = json::array();
  for (const DeltaTerm& d : v.deltas()) {
    deltas.push_back(json{{"x0", d.x0}, {"alpha", d.alpha}});
  }
  return json{{"fourier", fourier}, {"deltas", deltas}};
}

Potential potential_from_json(const json& j) {
  int K = 0;
  const json empty = json::array();
  const json& fourier = j.contains("fourier") ? j.at("fourier") : empty;
  const json& deltas = j.contains("deltas") ? j.at("deltas") : empty;
  for (const json& entry : fourier) {
    K = std::max(K, std::abs(entry.at("m").get<int>()));
  }
  std::vector<Complex> dual(static_cast<size_t>(2 * K + 1), Complex(0, 0));
  for (const json& entry : fourier) {
    int m = entry.at("m").get<int>();
    dual[static_cast<size_t>(m + K)] +=
        Complex(entry.at("re").get<double>(), entry.value("im", 0.0));
  }
  std::vector<DeltaTerm> ds;
  for (const json& entry : deltas) {
    ds.push_back(DeltaTerm{entry.at("x0").get<double>(),
                           entry.at("alpha").get<double>()});
  }
  return Potential(K, std::move(dual), std::move(ds), true);
}

json to_json(const Density& rho) {
  json coeffs = json::array();
  for (const Complex& c : rho.coeffs) coeffs.push_back(complex_pair(c));
  return json{{"K", rho.cutoff}, {"coeffs", coeffs}, {"N", rho.particles}};
}

Density density_from_json(const json& j) {
  PeriodicFunction f = function_from_json(j);
  int particles = j.at("N").get<int>();
  Grid g = grid_sample(f, oversampled_grid_size(f.cutoff()));
  std::vector<double> vals(static_cast<size_t>(g.n));
  for (int i = 0; i < g.n; ++i) {
    vals[static_cast<size_t>(i)] = g.values[static_cast<size_t>(i)].real();
  }
  return density_from_grid(vals, f.cutoff(), particles);
}

Density density_from_csv(const std::string& text, int particles, int cutoff) {
  std::istringstream in(text);
  std::vector<double> vals;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line.find_first_of("0123456789+-.") != 0) continue;  // header row
    std::istringstream row(line);
    std::string x_field, rho_field;
    if (!std::getline(row, x_field, ',') || !std::getline(row, rho_field, ',')) {
      throw std::invalid_argument("density CSV rows need x,rho columns");
    }
    vals.push_back(std::stod(rho_field));
  }
  if (vals.size() < 4) {
    throw std::invalid_argument("density CSV carries fewer than 4 samples");
  }
  int n = static_cast<int>(vals.size());
  if (cutoff <= 0) cutoff = n / 2 - 1;
  if (2 * cutoff + 1 > n) {
    throw std::invalid_argument("requested cutoff exceeds the CSV resolution");
  }
  return density_from_grid(vals, cutoff, particles);
}

std::string density_to_csv(const Density& rho, const std::string& provenance) {
  std::ostringstream out;
  out.precision(17);
  if (!provenance.empty()) out << "# " << provenance << "\n";
  out << "x,rho\n";
  for (int i = 0; i < rho.grid_n; ++i) {
    out << kTwoPi * i / rho.grid_n << "," << rho.grid[static_cast<size_t>(i)]
        << "\n";
  }
  return out.str();
}

json to_json(const EigenSolution& sol) {
  json eigenfunctions = json::array();
  for (const PeriodicFunction& f : sol.eigenfunctions) {
    eigenfunctions.push_back(to_json(f));
  }
  return json{{"K", sol.K},
              {"eigenvalues", sol.eigenvalues},
              {"eigenfunctions", eigenfunctions}};
}

std::string solution_to_csv(const EigenSolution& sol,
                            const std::string& provenance) {
  std::ostringstream out;
  out.precision(17);
  if (!provenance.empty()) out << "# " << provenance << "\n";
  out << "index,eigenvalue,gap_to_previous,degeneracy_group\n";
  for (int k = 0; k < sol.size(); ++k) {
    double gap = (k == 0) ? 0.0
                          : sol.eigenvalues[static_cast<size_t>(k)] -
                                sol.eigenvalues[static_cast<size_t>(k - 1)];
    out << (k + 1) << "," << sol.eigenvalues[static_cast<size_t>(k)] << ","
        << gap << "," << (sol.group_of(k) + 1) << "\n";
  }
  return out.str();
}

json to_json(const FockVector& psi) {
  json amps = json::object();
  const int L = psi.orbitals();
  for (uint32_t mask = 0; mask < psi.amplitudes().size(); ++mask) {
    Complex c = psi.amplitude(mask);
    if (c == Complex(0, 0)) continue;
    std::string key(static_cast<size_t>(L), '0');
    for (int j = 0; j < L; ++j) {
      if (mask & (1u << j)) key[static_cast<size_t>(j)] = '1';
    }
    amps[key] = complex_pair(c);
  }
  return json{{"L", L}, {"N", psi.particles()}, {"amplitudes", amps}};
}

FockVector fock_from_json(const json& j) {
  int L = j.at("L").get<int>();
  int N = j.at("N").get<int>();
  FockVector psi(L, N);
  for (const auto& [key, value] : j.at("amplitudes").items()) {
    if (static_cast<int>(key.size()) != L) {
      throw std::invalid_argument("bitstring length must equal L");
    }
    uint32_t mask = 0;
    for (int p = 0; p < L; ++p) {
      if (key[static_cast<size_t>(p)] == '1') {
        mask |= 1u << p;
      } else if (key[static_cast<size_t>(p)] != '0') {
        throw std::invalid_argument("bitstring must be 0/1 characters");
      }
    }
    psi.set_amplitude(mask, pair_to_complex(value));
  }
  return psi;
}

json to_json(const DensityReport& rep) {
  return json{{"integral", rep.integral},
              {"min_on_grid", rep.min_on_grid},
              {"h1_norm_of_sqrt", rep.h1_norm_of_sqrt},
              {"member_of_DN", rep.member},
              {"diagnostics", rep.diagnostics}};
}

json to_json(const PotentialDistance& d) {
  return json{{"raw_distance", d.raw},
              {"constant_adjusted_distance", d.adjusted},
              {"offset", d.offset}};
}

json to_json(const RoundtripReport& rep) {
  return json{{"K", rep.K},
              {"lambda1", rep.lambda1},
              {"density_report", to_json(rep.density_report)},
              {"distance", to_json(rep.distance)},
              {"density_l2_error", rep.density_l2_error},
              {"recovered_ground_energy", rep.recovered_ground_energy},
              {"weak_residual", rep.weak_residual},
              {"tolerance", rep.tolerance},
              {"delta_bearing", rep.delta_bearing},
              {"passed", rep.passed}};
}

json to_json(const ScanReport& rep) {
  json pairs = json::array();
  for (const ScanPair& p : rep.pairs) {
    pairs.push_back(json{{"separation", p.separation},
                         {"density_distance", p.density_distance},
                         {"gauge_distance", p.gauge_distance}});
  }
  return json{{"seed", rep.config.seed},
              {"pairs_requested", rep.config.pairs},
              {"N", rep.config.particles},
              {"K", rep.config.K},
              {"min_separation", rep.config.min_separation},
              {"pairs", pairs},
              {"min_density_distance", rep.min_density_distance},
              {"max_gauge_distance", rep.max_gauge_distance},
              {"passed", rep.passed}};
}

json to_json(const KlmnReport& rep) {
  return json{{"epsilon", rep.epsilon},
              {"c_effective", rep.c_effective},
              {"dual_norm", rep.dual_norm_v},
              {"max_ratio", rep.max_ratio},
              {"trials", rep.trials}};
}

json to_json(const LabReport& rep) {
  json params = json::object();
  for (const auto& [key, value] : rep.parameters) params[key] = value;
  json assertions = json::array();
  for (const LabAssertion& a : rep.assertions) {
    assertions.push_back(json{{"id", a.id},
                              {"passed", a.passed},
                              {"observed", a.observed},
                              {"threshold", a.threshold}});
  }
  return json{{"experiment", rep.experiment},
              {"parameters", params},
              {"columns", rep.sample_columns},
              {"samples", rep.samples},
              {"assertions", assertions},
              {"passed", rep.all_passed()}};
}

std::string lab_samples_csv(const LabReport& rep) {
  std::ostringstream out;
  out.precision(17);
  out << "# experiment=" << rep.experiment;
  for (const auto& [key, value] : rep.parameters) out << " " << key << "=" << value;
  out << "\n";
  for (size_t c = 0; c < rep.sample_columns.size(); ++c) {
    out << (c ? "," : "") << rep.sample_columns[c];
  }
  out << "\n";
  for (const auto& row : rep.samples) {
    for (size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << row[c];
    out << "\n";
  }
  return out.str();
}

}  // namespace torusdft
