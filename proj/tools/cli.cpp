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

#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "sicpom/errors.hpp"
#include "sicpom/experiment.hpp"
#include "sicpom/io.hpp"
#include "sicpom/optics.hpp"
#include "sicpom/random.hpp"
#include "sicpom/suite.hpp"

namespace sicpom::cli {

namespace {

struct Globals {
  std::string seed_text;
  std::string output;
  std::string format = "json";

  std::uint64_t seed() const { return seed_text.empty() ? 0 : parse_seed(seed_text); }
  bool csv() const { return format == "csv"; }
};

struct StateOptions {
  std::string path;
  bool random_pure = false;
  bool random_mixed = false;
  int dim = 0;
  CLI::Option* dim_opt = nullptr;
};

void add_state_options(CLI::App* sub, StateOptions& s) {
  auto* file = sub->add_option("--state", s.path, "State file (JSON)");
  auto* pure = sub->add_flag("--random-pure", s.random_pure, "Haar-random pure state drawn from the seed");
  auto* mixed = sub->add_flag("--random-mixed", s.random_mixed, "Hilbert-Schmidt random mixed state drawn from the seed");
  file->excludes(pure)->excludes(mixed);
  pure->excludes(mixed);
  s.dim_opt = sub->add_option("--dim", s.dim, "Dimension of a random state (2 or 4, default 4)")
                  ->check(CLI::IsMember({2, 4}));
  s.dim_opt->excludes(file);
}

DensityMatrix load_state(const StateOptions& s, std::uint64_t seed) {
  if (!s.path.empty()) return load_state_file(s.path);
  if (!s.random_pure && !s.random_mixed) throw ConfigError("one of --state, --random-pure or --random-mixed is required");
  ExperimentConfig cfg;
  cfg.seed = seed;
  cfg.state.source = s.random_pure ? StateSpec::Source::RandomPure : StateSpec::Source::RandomMixed;
  cfg.state.dim = s.dim == 0 ? 4 : s.dim;
  return experiment_state(cfg);
}

std::string csv_cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_number()) return v.dump();
  std::string s = v.get<std::string>();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

void flatten(const Json& j, const std::string& path, std::ostringstream& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) flatten(value, path.empty() ? key : path + "." + key, out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out << csv_cell(Json(path)) << ',' << csv_cell(j) << '\n';
  }
}

/// Generic CSV form of a JSON document: one "path,value" row per leaf.
std::string flat_csv(const Json& j) {
  std::ostringstream out;
  out << "path,value\n";
  flatten(j, "", out);
  return out.str();
}

std::string json_text(const Json& j) { return j.dump(2) + "\n"; }

void emit(const Globals& g, const std::string& text, std::ostream& out) {
  if (g.output.empty()) {
    out << text;
    out.flush();
  } else {
    write_atomic(g.output, text);
  }
}

std::optional<Scheme> scheme_from_pom_id(const std::string& id) {
  const auto dash = id.find('-');
  if (dash == std::string::npos) return std::nullopt;
  try {
    return scheme_from_string(id.substr(dash + 1));
  } catch (const ConfigError&) {
    return std::nullopt;
  }
}

int cmd_validate(const Globals& g, std::ostream& out) {
  const ValidationReport report = run_invariant_suite();
  if (g.csv()) {
    std::ostringstream s;
    s << "name,measured,threshold,passed,detail\n";
    for (const auto& c : report.checks()) {
      s << csv_cell(Json(c.name)) << ',' << format_double(c.measured) << ',' << format_double(c.threshold) << ','
        << (c.passed ? "true" : "false") << ',' << csv_cell(Json(c.detail)) << '\n';
    }
    emit(g, s.str(), out);
  } else {
    emit(g, json_text(report.to_json()), out);
  }
  return report.passed() ? kExitOk : kExitCheckFailed;
}

int cmd_probs(const Globals& g, const StateOptions& so, const std::string& scheme_name, std::ostream& out) {
  const Scheme scheme = scheme_from_string(scheme_name);
  const DensityMatrix rho = load_state(so, g.seed());
  const int dim = static_cast<int>(rho.dim());
  const auto probs = scheme_distribution(rho, scheme);
  const auto labels = lexicographic_labels(dim);
  if (g.csv()) {
    std::ostringstream s;
    s << "port,result,probability\n";
    for (std::size_t k = 0; k < probs.size(); ++k) {
      s << labels[k].port << ',' << labels[k].result << ',' << format_double(probs[k]) << '\n';
    }
    emit(g, s.str(), out);
    return kExitOk;
  }
  Json j;
  j["pom"] = pom_id(scheme, dim);
  Json rows = Json::array();
  for (std::size_t k = 0; k < probs.size(); ++k) {
    rows.push_back({{"port", labels[k].port}, {"result", labels[k].result}, {"p", probs[k]}});
  }
  j["probabilities"] = std::move(rows);
  emit(g, json_text(j), out);
  return kExitOk;
}

int cmd_simulate(const Globals& g, const StateOptions& so, const std::string& scheme_name, std::uint64_t shots,
                 std::ostream& out) {
  const Scheme scheme = scheme_from_string(scheme_name);
  const DensityMatrix rho = load_state(so, g.seed());
  const CountRecord rec = simulate_counts(rho, scheme, shots, derive_seed(g.seed(), 1));
  emit(g, g.csv() ? counts_to_csv(rec) : json_text(counts_to_json(rec)), out);
  return kExitOk;
}

struct ReconstructOptions {
  std::string counts;
  std::string method;
  std::string scheme;
  std::string truth;
  int max_iter = MleOptions{}.max_iter;
  double tol = MleOptions{}.tol;
};

int cmd_reconstruct(const Globals& g, const ReconstructOptions& o, std::ostream& out) {
  const CountRecord rec = load_counts_file(o.counts);
  const int dim = rec.counts.size() == 4 ? 2 : 4;
  if (rec.counts.size() != 4 && rec.counts.size() != 16) throw ConfigError("counts: expected 4 or 16 outcomes");
  if (rec.shots == 0) throw ConfigError("counts: shots must be positive");
  Scheme scheme = Scheme::Direct;
  if (!o.scheme.empty()) {
    scheme = scheme_from_string(o.scheme);
  } else if (auto s = scheme_from_pom_id(rec.pom_id)) {
    scheme = *s;
  }
  MleOptions mle;
  mle.max_iter = o.max_iter;
  mle.tol = o.tol;
  ReconstructionResult r = reconstruct(method_from_string(o.method), rec, scheme_pom(scheme, dim), mle);
  if (!o.truth.empty()) {
    const DensityMatrix truth = load_state_file(o.truth);
    if (truth.dim() != dim) throw DimensionError("--truth: dimension does not match the counts");
    attach_metrics(r, truth);
  }
  Json j = reconstruction_to_json(r);
  emit(g, g.csv() ? flat_csv(j) : json_text(j), out);
  return kExitOk;
}

int cmd_experiment(const Globals& g, const std::string& config_path, bool timing, bool seed_given,
                   std::ostream& out) {
  Json j;
  try {
    j = Json::parse(read_file(config_path));
  } catch (const Json::parse_error& e) {
    throw ConfigError("config file " + config_path + ": " + e.what());
  }
  const std::string base = std::filesystem::path(config_path).parent_path().string();
  ExperimentConfig cfg = parse_experiment_config(j, base);
  if (seed_given) cfg.seed = g.seed();
  cfg.timing = cfg.timing || timing;
  const Json report = report_to_json(run_experiment(cfg));
  emit(g, g.csv() ? flat_csv(report) : json_text(report), out);
  return kExitOk;
}

struct BenchOptions {
  std::size_t trials = 20;
  std::uint64_t shots = 1000000;
  unsigned jobs = 1;
  std::string scheme = "direct";
  int dim = 4;
  bool mixed = false;
  std::vector<std::string> methods;
  int max_iter = MleOptions{}.max_iter;
  double tol = MleOptions{}.tol;
};

int cmd_bench(const Globals& g, const BenchOptions& o, std::ostream& out) {
  BenchConfig cfg;
  cfg.trials = o.trials;
  cfg.shots = o.shots;
  cfg.seed = g.seed();
  cfg.dim = o.dim;
  cfg.mixed = o.mixed;
  cfg.scheme = scheme_from_string(o.scheme);
  cfg.jobs = o.jobs;
  cfg.mle.max_iter = o.max_iter;
  cfg.mle.tol = o.tol;
  if (!o.methods.empty()) {
    cfg.methods.clear();
    for (const auto& m : o.methods) cfg.methods.push_back(method_from_string(m));
  }
  const Json j = bench_to_json(run_bench(cfg));
  emit(g, g.csv() ? flat_csv(j) : json_text(j), out);
  return kExitOk;
}

PhotonicCircuit named_bench(const std::string& name) {
  if (name == "tetrahedron") return build_tetrahedron_bench();
  if (name == "first-stage") return build_first_stage_bench_d4();
  if (name == "full") return build_full_bench();
  if (name.size() == 6 && name.rfind("basis", 0) == 0 && name[5] >= '1' && name[5] <= '4') {
    return build_basis_circuit(name[5] - '0');
  }
  throw ConfigError("unknown bench '" + name + "'");
}

int cmd_dump_circuit(const Globals& g, const std::string& bench, const std::string& circuit_path,
                     std::ostream& out) {
  const PhotonicCircuit c = circuit_path.empty() ? named_bench(bench) : [&] {
    try {
      return circuit_from_json(Json::parse(read_file(circuit_path)));
    } catch (const Json::parse_error& e) {
      throw ConfigError("circuit file " + circuit_path + ": " + e.what());
    }
  }();
  Json j;
  j["circuit"] = circuit_to_json(c);
  j["unitary"] = matrix_to_json(circuit_unitary(c));
  j["entangling_elements"] = c.count_entangling();
  if (!c.description().ports.empty()) {
    Json ports = Json::array();
    for (const auto& pk : port_kraus(c)) ports.push_back({{"label", pk.label}, {"kraus", matrix_to_json(pk.kraus)}});
    j["port_kraus"] = std::move(ports);
  }
  if (!c.description().detectors.empty()) {
    Json effects = Json::array();
    const Pom pom = detection_pom(c);
    for (const auto& e : pom.effects()) effects.push_back({{"label", e.label()}, {"effect", matrix_to_json(e.matrix())}});
    j["detection_pom"] = std::move(effects);
  }
  emit(g, g.csv() ? flat_csv(j) : json_text(j), out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-qubit SIC POM toolkit: invariants, simulation and state reconstruction", "sicpom"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed_text, "RNG seed (decimal uint64; default $SICPOM_SEED or 0)")
                       ->envname("SICPOM_SEED");
  app.add_option("--output", g.output, "Write the result to this file (atomically) instead of stdout");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  auto* validate = app.add_subcommand("validate", "Run the invariant suite; nonzero exit on any failed check");

  StateOptions probs_state;
  std::string probs_scheme = "direct";
  auto* probs = app.add_subcommand("probs", "Outcome probabilities of a state");
  add_state_options(probs, probs_state);
  probs->add_option("--scheme", probs_scheme, "direct, two-step or optical")
      ->check(CLI::IsMember({"direct", "two-step", "optical"}));

  StateOptions sim_state;
  std::string sim_scheme = "direct";
  std::uint64_t sim_shots = 0;
  auto* simulate = app.add_subcommand("simulate", "Sample detection counts");
  add_state_options(simulate, sim_state);
  simulate->add_option("--scheme", sim_scheme, "direct, two-step or optical")
      ->check(CLI::IsMember({"direct", "two-step", "optical"}));
  simulate->add_option("--shots", sim_shots, "Number of shots")->required()->check(CLI::PositiveNumber);

  ReconstructOptions rec_opts;
  auto* recon = app.add_subcommand("reconstruct", "Estimate the state from counts");
  recon->add_option("--counts", rec_opts.counts, "Counts file (CSV or JSON)")->required();
  recon->add_option("--method", rec_opts.method, "linear, linear-projected or mle")
      ->required()
      ->check(CLI::IsMember({"linear", "linear-projected", "mle"}));
  recon->add_option("--scheme", rec_opts.scheme, "POM the counts came from (default: from the counts file, else direct)")
      ->check(CLI::IsMember({"direct", "two-step", "optical"}));
  recon->add_option("--truth", rec_opts.truth, "State file to compare against");
  recon->add_option("--max-iter", rec_opts.max_iter, "MLE iteration cap")->check(CLI::PositiveNumber);
  recon->add_option("--tol", rec_opts.tol, "MLE tolerance")->check(CLI::PositiveNumber);

  std::string config_path;
  bool timing = false;
  auto* experiment = app.add_subcommand("experiment", "Run an end-to-end experiment from a config file");
  experiment->add_option("--config", config_path, "Experiment config (JSON)")->required();
  experiment->add_flag("--timing", timing, "Include wall-clock timings (makes the report non-reproducible)");

  BenchOptions bench_opts;
  auto* bench = app.add_subcommand("bench", "Reconstruction fidelity statistics over random states");
  bench->add_option("--trials", bench_opts.trials, "Number of trials")->check(CLI::PositiveNumber);
  bench->add_option("--shots", bench_opts.shots, "Shots per trial")->check(CLI::PositiveNumber);
  bench->add_option("--jobs", bench_opts.jobs, "Worker threads; results do not depend on it")
      ->check(CLI::Range(1u, 1024u));
  bench->add_option("--scheme", bench_opts.scheme, "direct, two-step or optical")
      ->check(CLI::IsMember({"direct", "two-step", "optical"}));
  bench->add_option("--dim", bench_opts.dim, "2 or 4")->check(CLI::IsMember({2, 4}));
  bench->add_flag("--mixed", bench_opts.mixed, "Draw mixed instead of pure states");
  bench->add_option("--methods", bench_opts.methods, "Methods to run (default: all)")
      ->delimiter(',')
      ->check(CLI::IsMember({"linear", "linear-projected", "mle"}));
  bench->add_option("--max-iter", bench_opts.max_iter, "MLE iteration cap")->check(CLI::PositiveNumber);
  bench->add_option("--tol", bench_opts.tol, "MLE tolerance")->check(CLI::PositiveNumber);

  std::string bench_name;
  std::string circuit_path;
  auto* dump = app.add_subcommand("dump-circuit", "Compiled unitary, port Kraus operators and detection POM");
  auto* bench_opt = dump->add_option("--bench", bench_name, "tetrahedron, first-stage, full or basis1..basis4")
                        ->check(CLI::IsMember({"tetrahedron", "first-stage", "full", "basis1", "basis2", "basis3",
                                               "basis4"}));
  auto* circuit_opt = dump->add_option("--circuit", circuit_path, "Circuit file (JSON)");
  bench_opt->excludes(circuit_opt);
  dump->require_option(1);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    g.seed();  // reject a malformed seed before doing any work
    if (*validate) return cmd_validate(g, out);
    if (*probs) return cmd_probs(g, probs_state, probs_scheme, out);
    if (*simulate) return cmd_simulate(g, sim_state, sim_scheme, sim_shots, out);
    if (*recon) return cmd_reconstruct(g, rec_opts, out);
    if (*experiment) {
      // Only an explicit --seed overrides the config's seed; the environment default does not.
      const bool explicit_seed = std::any_of(args.begin(), args.end(), [](const std::string& a) {
        return a == "--seed" || a.rfind("--seed=", 0) == 0;
      });
      return cmd_experiment(g, config_path, timing, explicit_seed, out);
    }
    if (*bench) return cmd_bench(g, bench_opts, out);
    if (*dump) return cmd_dump_circuit(g, bench_name, circuit_path, out);
  } catch (const std::exception& e) {
    err << "sicpom: " << e.what() << '\n';
    return kExitError;
  }
  err << "sicpom: no subcommand\n";
  return kExitError;
}

}  // namespace sicpom::cli
