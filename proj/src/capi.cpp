#include "torusdft/torusdft.h"

#include <cstring>
#include <string>

#include "torusdft/json_io.hpp"

using nlohmann::json;

struct tdft_potential {
  torusdft::Potential value;
};
struct tdft_solution {
  torusdft::EigenSolution value;
};
struct tdft_density {
  torusdft::Density value;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Maps C++ error types onto the status enum; json errors parse, domain
// errors domain, everything else numeric.
template <typename Fn>
tdft_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    g_last_error = e.what();
    return TDFT_ERR_PARSE;
  } catch (const std::domain_error& e) {
    g_last_error = e.what();
    return TDFT_ERR_DOMAIN;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return TDFT_ERR_INVALID_ARGUMENT;
  } catch (const std::out_of_range& e) {
    g_last_error = e.what();
    return TDFT_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TDFT_ERR_NUMERIC;
  }
}

tdft_status require(bool ok, const char* message) {
  if (ok) return TDFT_OK;
  g_last_error = message;
  return TDFT_ERR_INVALID_ARGUMENT;
}

}  // namespace

extern "C" {

const char* tdft_status_name(tdft_status status) {
  switch (status) {
    case TDFT_OK:
      return "ok";
    case TDFT_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case TDFT_ERR_PARSE:
      return "parse error";
    case TDFT_ERR_DOMAIN:
      return "domain error";
    case TDFT_ERR_NUMERIC:
      return "numeric error";
  }
  return "unknown";
}

const char* tdft_last_error(void) { return g_last_error.c_str(); }

void tdft_string_free(char* text) { delete[] text; }

tdft_status tdft_potential_from_json(const char* json_text, tdft_potential** out) {
  if (tdft_status s = require(json_text && out, "null argument")) return s;
  return guarded([&] {
    json j = json::parse(json_text);
    *out = new tdft_potential{torusdft::potential_from_json(j)};
    return TDFT_OK;
  });
}

tdft_status tdft_potential_to_json(const tdft_potential* v, char** json_out) {
  if (tdft_status s = require(v && json_out, "null argument")) return s;
  return guarded([&] {
    *json_out = dup_string(torusdft::to_json(v->value).dump(2));
    return TDFT_OK;
  });
}

void tdft_potential_free(tdft_potential* v) { delete v; }

tdft_status tdft_potential_dual_norm(const tdft_potential* v, int cutoff,
                                     double* out) {
  if (tdft_status s = require(v && out && cutoff >= 0, "bad argument")) return s;
  return guarded([&] {
    *out = torusdft::dual_norm(v->value, cutoff);
    return TDFT_OK;
  });
}

tdft_status tdft_potential_distance(const tdft_potential* v,
                                    const tdft_potential* w, int cutoff,
                                    double* adjusted, double* offset) {
  if (tdft_status s = require(v && w && cutoff >= 0, "bad argument")) return s;
  return guarded([&] {
    torusdft::PotentialDistance d =
        torusdft::compare_up_to_constant(v->value, w->value, cutoff);
    if (adjusted) *adjusted = d.adjusted;
    if (offset) *offset = d.offset;
    return TDFT_OK;
  });
}

tdft_status tdft_solve(const tdft_potential* v, int K, tdft_solution** out) {
  if (tdft_status s = require(v && out && K >= 1, "bad argument")) return s;
  return guarded([&] {
    *out = new tdft_solution{
        torusdft::eigensolve(torusdft::assemble_hamiltonian(v->value, K))};
    return TDFT_OK;
  });
}

void tdft_solution_free(tdft_solution* sol) { delete sol; }

tdft_status tdft_solution_size(const tdft_solution* sol, int* out) {
  if (tdft_status s = require(sol && out, "null argument")) return s;
  *out = sol->value.size();
  return TDFT_OK;
}

tdft_status tdft_solution_eigenvalue(const tdft_solution* sol, int index,
                                     double* out) {
  if (tdft_status s = require(sol && out, "null argument")) return s;
  if (tdft_status s = require(index >= 0 && index < sol->value.size(),
                              "eigenvalue index out of range")) {
    return s;
  }
  *out = sol->value.eigenvalues[static_cast<size_t>(index)];
  return TDFT_OK;
}

tdft_status tdft_solution_gap(const tdft_solution* sol, double* out) {
  if (tdft_status s = require(sol && out, "null argument")) return s;
  return guarded([&] {
    *out = torusdft::spectral_gap(sol->value);
    return TDFT_OK;
  });
}

tdft_status tdft_solution_to_json(const tdft_solution* sol, char** out) {
  if (tdft_status s = require(sol && out, "null argument")) return s;
  return guarded([&] {
    *out = dup_string(torusdft::to_json(sol->value).dump(2));
    return TDFT_OK;
  });
}

tdft_status tdft_solution_to_csv(const tdft_solution* sol, char** out) {
  if (tdft_status s = require(sol && out, "null argument")) return s;
  return guarded([&] {
    *out = dup_string(torusdft::solution_to_csv(
        sol->value, "K=" + std::to_string(sol->value.K)));
    return TDFT_OK;
  });
}

tdft_status tdft_slater_density(const tdft_solution* sol, const int* orbitals,
                                int count, tdft_density** out) {
  if (tdft_status s = require(sol && orbitals && out && count >= 1, "bad argument")) {
    return s;
  }
  return guarded([&] {
    std::vector<int> occ(orbitals, orbitals + count);
    *out = new tdft_density{torusdft::slater_density(sol->value, occ)};
    return TDFT_OK;
  });
}

tdft_status tdft_ground_density(const tdft_solution* sol, int particles,
                                tdft_density** out) {
  if (tdft_status s = require(sol && out && particles >= 1, "bad argument")) {
    return s;
  }
  return guarded([&] {
    *out = new tdft_density{torusdft::ground_state_density(sol->value, particles)};
    return TDFT_OK;
  });
}

tdft_status tdft_density_from_json(const char* json_text, tdft_density** out) {
  if (tdft_status s = require(json_text && out, "null argument")) return s;
  return guarded([&] {
    *out = new tdft_density{torusdft::density_from_json(json::parse(json_text))};
    return TDFT_OK;
  });
}

tdft_status tdft_density_from_csv(const char* csv_text, int particles, int cutoff,
                                  tdft_density** out) {
  if (tdft_status s = require(csv_text && out && particles >= 1, "bad argument")) {
    return s;
  }
  return guarded([&] {
    *out = new tdft_density{torusdft::density_from_csv(csv_text, particles, cutoff)};
    return TDFT_OK;
  });
}

tdft_status tdft_density_to_json(const tdft_density* rho, char** out) {
  if (tdft_status s = require(rho && out, "null argument")) return s;
  return guarded([&] {
    *out = dup_string(torusdft::to_json(rho->value).dump(2));
    return TDFT_OK;
  });
}

tdft_status tdft_density_to_csv(const tdft_density* rho, char** out) {
  if (tdft_status s = require(rho && out, "null argument")) return s;
  return guarded([&] {
    *out = dup_string(torusdft::density_to_csv(
        rho->value, "N=" + std::to_string(rho->value.particles) +
                        " K=" + std::to_string(rho->value.cutoff)));
    return TDFT_OK;
  });
}

void tdft_density_free(tdft_density* rho) { delete rho; }

tdft_status tdft_density_validate(const tdft_density* rho, int particles,
                                  char** report_json) {
  if (tdft_status s = require(rho && report_json && particles >= 1, "bad argument")) {
    return s;
  }
  return guarded([&] {
    torusdft::DensityReport rep = torusdft::validate_density(rho->value, particles);
    *report_json = dup_string(torusdft::to_json(rep).dump(2));
    return TDFT_OK;
  });
}

tdft_status tdft_ks_invert(const tdft_density* rho, tdft_potential** v_out,
                           char** report_json) {
  if (tdft_status s = require(rho && v_out, "null argument")) return s;
  return guarded([&] {
    torusdft::KsInversion inv = torusdft::ks_invert(rho->value);
    if (report_json) {
      json rep{{"weak_residual", inv.weak_residual},
               {"ground", torusdft::to_json(inv.ground)},
               {"cutoff", inv.v.cutoff()}};
      *report_json = dup_string(rep.dump(2));
    }
    *v_out = new tdft_potential{std::move(inv.v)};
    return TDFT_OK;
  });
}

tdft_status tdft_hk_roundtrip(const tdft_potential* v, int K, double tol,
                              char** report_json) {
  if (tdft_status s = require(v && report_json && K >= 1 && tol > 0, "bad argument")) {
    return s;
  }
  return guarded([&] {
    torusdft::RoundtripReport rep = torusdft::hk_roundtrip(v->value, K, tol);
    *report_json = dup_string(torusdft::to_json(rep).dump(2));
    return TDFT_OK;
  });
}

tdft_status tdft_hk_scan(unsigned long long seed, int pairs, int particles, int K,
                         double min_separation, char** report_json) {
  if (tdft_status s = require(report_json && pairs >= 1 && particles >= 1 && K >= 1,
                              "bad argument")) {
    return s;
  }
  return guarded([&] {
    torusdft::ScanConfig config;
    config.seed = seed;
    config.pairs = pairs;
    config.particles = particles;
    config.K = K;
    if (min_separation > 0) config.min_separation = min_separation;
    torusdft::ScanReport rep = torusdft::hk_injectivity_scan(config);
    *report_json = dup_string(torusdft::to_json(rep).dump(2));
    return TDFT_OK;
  });
}

tdft_status tdft_lab_run(const char* experiment, const char* params_json,
                         char** report_json, char** samples_csv) {
  if (tdft_status s = require(experiment && report_json, "null argument")) return s;
  return guarded([&] {
    json p = params_json ? json::parse(params_json) : json::object();
    const uint64_t seed = p.value("seed", 1ull);
    const int count = p.value("count", 100);
    const int K = p.value("K", 64);
    std::string name = experiment;

    torusdft::LabReport rep;
    if (name == "positivity") {
      rep = torusdft::run_positivity_ensemble(seed, count, K);
    } else if (name == "gap") {
      rep = torusdft::run_gap_ensemble(seed, count, K);
    } else if (name == "courant") {
      rep = torusdft::run_courant_ensemble(seed, count, K, p.value("kmax", 12));
    } else if (name == "delta-oracle") {
      std::vector<double> alphas =
          p.value("alphas", std::vector<double>{0.5, 1.0, 5.0});
      rep = torusdft::run_delta_oracle_experiment(alphas, K, std::max(K / 4, 8));
    } else if (name == "gns") {
      rep = torusdft::run_gns_sweep(seed, count, p.value("K", 16));
    } else if (name == "klmn") {
      rep = torusdft::run_klmn_experiment(seed, p.value("potentials", 10),
                                          p.value("trials", 20),
                                          p.value("epsilon", 0.5), K);
    } else if (name == "excited-delta") {
      torusdft::Potential v =
          p.contains("potential")
              ? torusdft::potential_from_json(p.at("potential"))
              : torusdft::Potential();
      std::vector<double> alphas =
          p.value("alphas", std::vector<double>{-1.0, 1.0, 10.0});
      rep = torusdft::excited_delta_experiment(v, p.value("k", 1), alphas, K);
    } else {
      g_last_error = "unknown experiment: " + name;
      return TDFT_ERR_INVALID_ARGUMENT;
    }

    *report_json = dup_string(torusdft::to_json(rep).dump(2));
    if (samples_csv) *samples_csv = dup_string(torusdft::lab_samples_csv(rep));
    return TDFT_OK;
  });
}

}  // extern "C"
