// Copyright 2026 The sicpom Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sicpom/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <set>
#include <thread>

#include "sicpom/errors.hpp"
#include "sicpom/optics.hpp"
#include "sicpom/random.hpp"
#include "sicpom/sic.hpp"

namespace sicpom {

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::Direct: return "direct";
    case Scheme::TwoStep: return "two-step";
    case Scheme::Optical: return "optical";
  }
  return "?";
}

Scheme scheme_from_string(const std::string& s) {
  if (s == "direct") return Scheme::Direct;
  if (s == "two-step") return Scheme::TwoStep;
  if (s == "optical") return Scheme::Optical;
  throw ConfigError("unknown scheme '" + s + "' (expected direct, two-step or optical)");
}

namespace {

void require_scheme_dim(int dim) {
  if (dim != 2 && dim != 4) throw DimensionError("schemes exist for dim 2 and 4 only, got " + std::to_string(dim));
}

Pom build_scheme_pom(Scheme s, int dim) {
  if (dim == 2) {
    switch (s) {
      case Scheme::Direct: return sic_pom(2);
      case Scheme::TwoStep: return compose_two_step(two_step_scheme_d2());
      case Scheme::Optical: return detection_pom(build_tetrahedron_bench());
    }
  }
  switch (s) {
    case Scheme::Direct: return align_sic_to_two_step(compose_two_step(two_step_scheme_d4()), 1e-10);
    case Scheme::TwoStep: return compose_two_step(two_step_scheme_d4());
    case Scheme::Optical: return full_bench_pom();
  }
  throw InvariantError("unreachable scheme");
}

}  // namespace

Pom scheme_pom(Scheme s, int dim) {
  require_scheme_dim(dim);
  // Built once per (scheme, dim); static initialization is thread-safe.
  static const std::vector<Pom> cache = [] {
    std::vector<Pom> poms;
    for (int d : {2, 4}) {
      for (Scheme sc : {Scheme::Direct, Scheme::TwoStep, Scheme::Optical}) poms.push_back(build_scheme_pom(sc, d));
    }
    return poms;
  }();
  return cache[(dim == 2 ? 0 : 3) + static_cast<int>(s)];
}

TwoStepScheme two_step_scheme(int dim) {
  require_scheme_dim(dim);
  return dim == 2 ? two_step_scheme_d2() : two_step_scheme_d4();
}

std::string pom_id(Scheme s, int dim) { return "sic" + std::to_string(dim) + "-" + to_string(s); }

std::vector<double> scheme_distribution(const DensityMatrix& rho, Scheme s) {
  const int dim = static_cast<int>(rho.dim());
  require_scheme_dim(dim);
  if (s == Scheme::TwoStep) return sequential_distribution(rho, two_step_scheme(dim));
  return outcome_distribution(rho, scheme_pom(s, dim));
}

double scheme_discrepancy(const DensityMatrix& rho) {
  const auto direct = scheme_distribution(rho, Scheme::Direct);
  const auto two = scheme_distribution(rho, Scheme::TwoStep);
  const auto optical = scheme_distribution(rho, Scheme::Optical);
  double m = 0.0;
  for (std::size_t j = 0; j < direct.size(); ++j) {
    m = std::max({m, std::abs(direct[j] - two[j]), std::abs(direct[j] - optical[j]), std::abs(two[j] - optical[j])});
  }
  return m;
}

namespace {

const Json& field(const Json& j, const char* name, const std::string& where) {
  if (!j.contains(name)) throw ConfigError(where + "." + name + ": missing");
  return j.at(name);
}

void reject_unknown(const Json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError(where + "." + key + ": unknown field");
  }
}

std::uint64_t positive_integer(const Json& v, const std::string& where) {
  if (!is_non_negative_integer(v) || v.get<std::uint64_t>() == 0) throw ConfigError(where + ": must be a positive integer");
  return v.get<std::uint64_t>();
}

}  // namespace

ExperimentConfig parse_experiment_config(const Json& j, const std::string& base_dir) {
  if (!j.is_object()) throw ConfigError("config: must be a JSON object");
  reject_unknown(j, {"state", "scheme", "shots", "seed", "methods", "mle", "timing"}, "config");
  ExperimentConfig cfg;

  const Json& st = field(j, "state", "config");
  if (!st.is_object()) throw ConfigError("config.state: must be an object");
  reject_unknown(st, {"source", "path", "dim"}, "config.state");
  const Json& src = field(st, "source", "config.state");
  if (!src.is_string()) throw ConfigError("config.state.source: must be a string");
  const std::string source = src.get<std::string>();
  if (source == "file") {
    cfg.state.source = StateSpec::Source::File;
    const Json& p = field(st, "path", "config.state");
    if (!p.is_string() || p.get<std::string>().empty()) throw ConfigError("config.state.path: must be a nonempty string");
    std::filesystem::path path(p.get<std::string>());
    if (path.is_relative() && !base_dir.empty()) path = std::filesystem::path(base_dir) / path;
    cfg.state.path = path.string();
    if (st.contains("dim")) throw ConfigError("config.state.dim: not allowed with source \"file\"");
  } else if (source == "random-pure" || source == "random-mixed") {
    cfg.state.source = source == "random-pure" ? StateSpec::Source::RandomPure : StateSpec::Source::RandomMixed;
    if (st.contains("path")) throw ConfigError("config.state.path: only allowed with source \"file\"");
    if (st.contains("dim")) {
      const Json& d = st.at("dim");
      if (!d.is_number_integer() || (d.get<int>() != 2 && d.get<int>() != 4)) {
        throw ConfigError("config.state.dim: must be 2 or 4");
      }
      cfg.state.dim = d.get<int>();
    }
  } else {
    throw ConfigError("config.state.source: must be \"file\", \"random-pure\" or \"random-mixed\"");
  }

  const Json& sc = field(j, "scheme", "config");
  if (!sc.is_string()) throw ConfigError("config.scheme: must be a string");
  try {
    cfg.scheme = scheme_from_string(sc.get<std::string>());
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("config.scheme: ") + e.what());
  }

  cfg.shots = positive_integer(field(j, "shots", "config"), "config.shots");
  const Json& seed = field(j, "seed", "config");
  if (!is_non_negative_integer(seed)) throw ConfigError("config.seed: must be a non-negative integer");
  cfg.seed = seed.get<std::uint64_t>();

  const Json& methods = field(j, "methods", "config");
  if (!methods.is_array() || methods.empty()) throw ConfigError("config.methods: must be a nonempty array");
  std::set<Method> seen;
  for (std::size_t i = 0; i < methods.size(); ++i) {
    const std::string where = "config.methods[" + std::to_string(i) + "]";
    if (!methods[i].is_string()) throw ConfigError(where + ": must be a string");
    Method m;
    try {
      m = method_from_string(methods[i].get<std::string>());
    } catch (const ConfigError& e) {
      throw ConfigError(where + ": " + e.what());
    }
    if (!seen.insert(m).second) throw ConfigError(where + ": duplicate method");
    cfg.methods.push_back(m);
  }

  if (j.contains("mle")) {
    const Json& mle = j.at("mle");
    if (!mle.is_object()) throw ConfigError("config.mle: must be an object");
    reject_unknown(mle, {"max_iter", "tol"}, "config.mle");
    if (mle.contains("max_iter")) {
      const std::uint64_t it = positive_integer(mle.at("max_iter"), "config.mle.max_iter");
      if (it > 100000000) throw ConfigError("config.mle.max_iter: at most 100000000");
      cfg.mle.max_iter = static_cast<int>(it);
    }
    if (mle.contains("tol")) {
      const Json& tol = mle.at("tol");
      if (!tol.is_number() || !(tol.get<double>() > 0.0) || !std::isfinite(tol.get<double>())) {
        throw ConfigError("config.mle.tol: must be a positive number");
      }
      cfg.mle.tol = tol.get<double>();
    }
  }
  if (j.contains("timing")) {
    if (!j.at("timing").is_boolean()) throw ConfigError("config.timing: must be a boolean");
    cfg.timing = j.at("timing").get<bool>();
  }
  return cfg;
}

Json config_to_json(const ExperimentConfig& cfg) {
  Json j;
  Json st;
  switch (cfg.state.source) {
    case StateSpec::Source::File:
      st["source"] = "file";
      st["path"] = cfg.state.path;
      break;
    case StateSpec::Source::RandomPure:
      st["source"] = "random-pure";
      st["dim"] = cfg.state.dim;
      break;
    case StateSpec::Source::RandomMixed:
      st["source"] = "random-mixed";
      st["dim"] = cfg.state.dim;
      break;
  }
  j["state"] = std::move(st);
  j["scheme"] = to_string(cfg.scheme);
  j["shots"] = cfg.shots;
  j["seed"] = cfg.seed;
  Json methods = Json::array();
  for (Method m : cfg.methods) methods.push_back(to_string(m));
  j["methods"] = std::move(methods);
  j["mle"] = {{"max_iter", cfg.mle.max_iter}, {"tol", cfg.mle.tol}};
  j["timing"] = cfg.timing;
  return j;
}

DensityMatrix experiment_state(const ExperimentConfig& cfg) {
  switch (cfg.state.source) {
    case StateSpec::Source::File: return load_state_file(cfg.state.path);
    case StateSpec::Source::RandomPure: {
      Rng rng = Rng::stream(cfg.seed, 0);
      return random_pure_state(cfg.state.dim, rng);
    }
    case StateSpec::Source::RandomMixed: {
      Rng rng = Rng::stream(cfg.seed, 0);
      return random_mixed_state(cfg.state.dim, rng);
    }
  }
  throw InvariantError("unreachable state source");
}

CountRecord simulate_counts(const DensityMatrix& rho, Scheme s, std::uint64_t shots, std::uint64_t seed) {
  const int dim = static_cast<int>(rho.dim());
  require_scheme_dim(dim);
  if (s == Scheme::TwoStep) {
    CountRecord rec{pom_id(s, dim), shots, lexicographic_labels(dim),
                    sample_sequential(rho, two_step_scheme(dim), shots, seed)};
    rec.validate();
    return rec;
  }
  const auto dist = outcome_distribution(rho, scheme_pom(s, dim));
  return sample_counts(dist, shots, seed, lexicographic_labels(dim), pom_id(s, dim));
}

TrialOutcome simulate_and_reconstruct(const DensityMatrix& truth, Scheme s, std::uint64_t shots,
                                      std::uint64_t seed, const std::vector<Method>& methods,
                                      const MleOptions& mle) {
  TrialOutcome out;
  out.counts = simulate_counts(truth, s, shots, seed);
  const Pom& pom = scheme_pom(s, static_cast<int>(truth.dim()));
  for (Method m : methods) {
    const auto start = std::chrono::steady_clock::now();
    ReconstructionResult r = reconstruct(m, out.counts, pom, mle);
    const auto stop = std::chrono::steady_clock::now();
    attach_metrics(r, truth);
    out.results.push_back(std::move(r));
    out.wall_clock_ms.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
  }
  return out;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  if (cfg.shots == 0) throw ConfigError("config.shots: must be a positive integer");
  if (cfg.methods.empty()) throw ConfigError("config.methods: must be a nonempty array");
  DensityMatrix truth = experiment_state(cfg);
  const int dim = static_cast<int>(truth.dim());
  if (dim != 2 && dim != 4) throw DimensionError("experiment: state must have dim 2 or 4");
  const double discrepancy = scheme_discrepancy(truth);
  if (!(discrepancy <= 1e-10)) {
    throw InvariantError("experiment: schemes disagree by " + format_double(discrepancy));
  }
  std::vector<double> probs = scheme_distribution(truth, cfg.scheme);
  TrialOutcome trial = simulate_and_reconstruct(truth, cfg.scheme, cfg.shots, derive_seed(cfg.seed, 1),
                                                cfg.methods, cfg.mle);
  return ExperimentReport{cfg, std::move(truth), lexicographic_labels(dim), std::move(probs), discrepancy,
                          std::move(trial)};
}

Json report_to_json(const ExperimentReport& r) {
  Json j;
  j["config"] = config_to_json(r.config);
  j["state"] = state_to_json(r.truth);
  j["pom"] = pom_id(r.config.scheme, static_cast<int>(r.truth.dim()));
  j["scheme_discrepancy"] = r.discrepancy;
  Json probs = Json::array();
  for (std::size_t k = 0; k < r.probabilities.size(); ++k) {
    probs.push_back({{"port", r.labels[k].port}, {"result", r.labels[k].result}, {"p", r.probabilities[k]}});
  }
  j["probabilities"] = std::move(probs);
  j["counts"] = counts_to_json(r.trial.counts);
  Json recs = Json::array();
  for (std::size_t k = 0; k < r.trial.results.size(); ++k) {
    Json rj = reconstruction_to_json(r.trial.results[k]);
    if (r.config.timing) rj["wall_clock_ms"] = r.trial.wall_clock_ms[k];
    recs.push_back(std::move(rj));
  }
  j["reconstructions"] = std::move(recs);
  return j;
}

Quartiles quartiles(std::vector<double> xs) {
  if (xs.empty()) throw InvariantError("quartiles: empty sample");
  std::sort(xs.begin(), xs.end());
  auto at = [&](double q) {
    const double pos = q * static_cast<double>(xs.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, xs.size() - 1);
    return xs[lo] + (pos - static_cast<double>(lo)) * (xs[hi] - xs[lo]);
  };
  return {at(0.25), at(0.5), at(0.75)};
}

BenchResult run_bench(const BenchConfig& cfg) {
  if (cfg.trials == 0) throw ConfigError("bench: trials must be positive");
  if (cfg.shots == 0) throw ConfigError("bench: shots must be positive");
  if (cfg.methods.empty()) throw ConfigError("bench: at least one method required");
  require_scheme_dim(cfg.dim);
  scheme_pom(cfg.scheme, cfg.dim);  // build the cache before threads start

  std::vector<TrialOutcome> outcomes(cfg.trials);
  auto run_one = [&](std::size_t i) {
    const std::uint64_t trial_seed = derive_seed(cfg.seed, i);
    Rng rng = Rng::stream(trial_seed, 0);
    const DensityMatrix truth = cfg.mixed ? random_mixed_state(cfg.dim, rng) : random_pure_state(cfg.dim, rng);
    outcomes[i] = simulate_and_reconstruct(truth, cfg.scheme, cfg.shots, derive_seed(trial_seed, 1), cfg.methods,
                                           cfg.mle);
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(cfg.trials)));
  if (jobs == 1) {
    for (std::size_t i = 0; i < cfg.trials; ++i) run_one(i);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(jobs);
    for (unsigned w = 0; w < jobs; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < cfg.trials; i += jobs) run_one(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  BenchResult res{cfg, {}};
  for (std::size_t m = 0; m < cfg.methods.size(); ++m) {
    MethodStats st;
    st.method = cfg.methods[m];
    std::vector<double> fids;
    for (const auto& o : outcomes) {
      const auto& r = o.results[m];
      st.fidelities.push_back(r.fidelity);
      st.trace_distances.push_back(r.trace_distance.value_or(0.0));
      if (r.fidelity) {
        fids.push_back(*r.fidelity);
      } else {
        ++st.unphysical;
      }
    }
    if (!fids.empty()) st.fidelity = quartiles(fids);
    st.trace_distance = quartiles(st.trace_distances);
    res.methods.push_back(std::move(st));
  }
  return res;
}

Json bench_to_json(const BenchResult& r) {
  auto q = [](const Quartiles& x) { return Json{{"q1", x.q1}, {"median", x.median}, {"q3", x.q3}}; };
  Json j;
  j["trials"] = r.config.trials;
  j["shots"] = r.config.shots;
  j["seed"] = r.config.seed;
  j["dim"] = r.config.dim;
  j["state"] = r.config.mixed ? "random-mixed" : "random-pure";
  j["scheme"] = to_string(r.config.scheme);
  Json methods = Json::array();
  for (const auto& st : r.methods) {
    Json m;
    m["method"] = to_string(st.method);
    m["fidelity"] = st.fidelity ? q(*st.fidelity) : Json(nullptr);
    m["trace_distance"] = q(st.trace_distance);
    m["unphysical_trials"] = st.unphysical;
    methods.push_back(std::move(m));
  }
  j["methods"] = std::move(methods);
  return j;
}

}  // namespace sicpom
