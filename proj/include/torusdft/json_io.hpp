#pragma once

// JSON and CSV (de)serialization for the file formats the CLI speaks.
//
// Function: {"K": int, "coeffs": [[re, im], ...]} in m = -K..K order.
// Potential: {"fourier": [{"m": int, "re": f, "im": f}],
//             "deltas": [{"x0": f, "alpha": f}]}, x0 in [0, 2*pi).
// Density: {"K": int, "coeffs": [[re, im], ...], "N": int}; CSV columns
// x, rho(x) over a uniform grid.
// Solution: {"K": int, "eigenvalues": [...], "eigenfunctions": [...]}.
// Fock vector: {"L": int, "N": int, "amplitudes": {"0110..": [re, im]}}
// with orbital j at string position j (leftmost = orbital 1).

#include <string>

#include "json.hpp"
#include "torusdft/ks.hpp"
#include "torusdft/lab.hpp"

namespace torusdft {

nlohmann::json to_json(const PeriodicFunction& f);
PeriodicFunction function_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Potential& v);
Potential potential_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Density& rho);
Density density_from_json(const nlohmann::json& j);
Density density_from_csv(const std::string& text, int particles, int cutoff);
std::string density_to_csv(const Density& rho, const std::string& provenance);

nlohmann::json to_json(const EigenSolution& sol);
std::string solution_to_csv(const EigenSolution& sol, const std::string& provenance);

nlohmann::json to_json(const FockVector& psi);
FockVector fock_from_json(const nlohmann::json& j);

nlohmann::json to_json(const DensityReport& rep);
nlohmann::json to_json(const PotentialDistance& d);
nlohmann::json to_json(const RoundtripReport& rep);
nlohmann::json to_json(const ScanReport& rep);
nlohmann::json to_json(const KlmnReport& rep);
nlohmann::json to_json(const LabReport& rep);
std::string lab_samples_csv(const LabReport& rep);

}  // namespace torusdft
