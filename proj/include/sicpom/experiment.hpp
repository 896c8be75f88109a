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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sicpom/io.hpp"
#include "sicpom/quantum.hpp"
#include "sicpom/successive.hpp"
#include "sicpom/tomography.hpp"

namespace sicpom {

enum class Scheme { Direct, TwoStep, Optical };
std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& s);

/// The SIC POM each scheme measures, effects in lexicographic (port, result)
/// order. Direct is the fiducial SIC aligned to that order, two-step the
/// composed Kraus chain, optical the detection POM of the simulated bench.
Pom scheme_pom(Scheme s, int dim);
TwoStepScheme two_step_scheme(int dim);
std::string pom_id(Scheme s, int dim);

/// Outcome distribution under a scheme. Two-step follows the sequential
/// chain rather than the composed POM.
std::vector<double> scheme_distribution(const DensityMatrix& rho, Scheme s);

/// Max pairwise difference of the three schemes' distributions.
double scheme_discrepancy(const DensityMatrix& rho);

struct StateSpec {
  enum class Source { File, RandomPure, RandomMixed };
  Source source = Source::RandomPure;
  std::string path;
  int dim = 4;
};

struct ExperimentConfig {
  StateSpec state;
  Scheme scheme = Scheme::Direct;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  std::vector<Method> methods;
  MleOptions mle;
  bool timing = false;
};

/// Field-level ConfigError on any problem; unknown keys are rejected.
/// Relative state paths resolve against base_dir when it is nonempty.
ExperimentConfig parse_experiment_config(const Json& j, const std::string& base_dir = {});
Json config_to_json(const ExperimentConfig& cfg);

/// True state of a config: loaded from file, or drawn on stream 0 of the seed.
DensityMatrix experiment_state(const ExperimentConfig& cfg);

struct TrialOutcome {
  CountRecord counts;
  std::vector<ReconstructionResult> results;
  std::vector<double> wall_clock_ms;
};

/// Samples `shots` outcomes under the scheme on seed `seed` and reconstructs
/// with every method; metrics against `truth` are attached.
TrialOutcome simulate_and_reconstruct(const DensityMatrix& truth, Scheme s, std::uint64_t shots,
                                      std::uint64_t seed, const std::vector<Method>& methods,
                                      const MleOptions& mle);

CountRecord simulate_counts(const DensityMatrix& rho, Scheme s, std::uint64_t shots, std::uint64_t seed);

struct ExperimentReport {
  ExperimentConfig config;
  DensityMatrix truth;
  std::vector<OutcomeLabel> labels;
  std::vector<double> probabilities;
  double discrepancy = 0.0;
  TrialOutcome trial;
};

/// Throws InvariantError when the schemes disagree by more than 1e-10.
ExperimentReport run_experiment(const ExperimentConfig& cfg);
/// Deterministic given the config; timings appear only when cfg.timing.
Json report_to_json(const ExperimentReport& r);

struct BenchConfig {
  std::size_t trials = 20;
  std::uint64_t shots = 1000000;
  std::uint64_t seed = 0;
  int dim = 4;
  bool mixed = false;
  Scheme scheme = Scheme::Direct;
  std::vector<Method> methods{Method::Linear, Method::LinearProjected, Method::Mle};
  MleOptions mle;
  unsigned jobs = 1;
};

struct Quartiles {
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
};
/// Linear interpolation between order statistics.
Quartiles quartiles(std::vector<double> xs);

struct MethodStats {
  Method method = Method::Linear;
  std::vector<std::optional<double>> fidelities;
  std::vector<double> trace_distances;
  /// Over trials with a physical estimate; unset when there are none.
  std::optional<Quartiles> fidelity;
  Quartiles trace_distance;
  std::size_t unphysical = 0;
};

struct BenchResult {
  BenchConfig config;
  std::vector<MethodStats> methods;
};

/// Trial i draws its state and counts from seed derive_seed(seed, i), so
/// results do not depend on `jobs`.
BenchResult run_bench(const BenchConfig& cfg);
Json bench_to_json(const BenchResult& r);

}  // namespace sicpom
