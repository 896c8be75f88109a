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
#include <span>
#include <string>
#include <vector>

#include "sicpom/quantum.hpp"
#include "sicpom/successive.hpp"

namespace sicpom {

/// Detection counts of one run, one entry per outcome label.
struct CountRecord {
  std::string pom_id;
  std::uint64_t shots = 0;
  std::vector<OutcomeLabel> labels;
  std::vector<std::uint64_t> counts;

  /// Throws InvariantError when sizes differ or counts do not sum to shots.
  void validate() const;
  std::vector<double> frequencies() const;
};

/// Born probabilities of every effect; sums to 1 within 1e-10.
std::vector<double> outcome_distribution(const DensityMatrix& rho, const Pom& pom);

/// Multinomial draw, shot by shot, in batches of 65536 on streams
/// derive_seed(seed, batch). Labels default to lexicographic (port, result).
CountRecord sample_counts(std::span<const double> dist, std::uint64_t shots, std::uint64_t seed,
                          std::vector<OutcomeLabel> labels = {}, std::string pom_id = {});

/// SIC dual-frame estimate sum_j ((d+1) f_j - 1/d) d E_j. Hermitian and unit
/// trace, not necessarily positive. Throws InvariantError when `sic` fails
/// validate_sic at 1e-10.
Matrix linear_inversion(std::span<const double> freqs, const Pom& sic);

/// Nearest density matrix in Frobenius norm: eigenvalues projected onto the
/// probability simplex, eigenvectors kept.
DensityMatrix project_to_physical(const Matrix& h);

/// Euclidean projection of a real vector onto the probability simplex.
std::vector<double> project_to_simplex(std::vector<double> v);

enum class Method { Linear, LinearProjected, Mle };
std::string to_string(Method m);
Method method_from_string(const std::string& s);

struct MleOptions {
  int max_iter = 100000;
  double tol = 1e-10;
  bool record_history = false;
};

struct ReconstructionResult {
  Method method = Method::Linear;
  Matrix estimate;
  /// Whether `estimate` satisfies the DensityMatrix invariants. Always true
  /// for linear-projected and mle.
  bool physical = false;
  int iterations = 0;
  bool converged = true;
  /// Last log-likelihood increase (mle) and max_j |p_j - f_j| at the estimate.
  double likelihood_delta = 0.0;
  double max_probability_deviation = 0.0;
  /// Per-shot log-likelihood sum_j f_j log p_j after every iteration.
  std::vector<double> log_likelihood_history;
  /// Smallest step-to-step log-likelihood change observed (mle).
  double min_likelihood_step = 0.0;
  std::optional<double> fidelity;
  std::optional<double> trace_distance;
};

/// Fixed-point iteration rho <- N(R rho R), R = sum_{f_j > 0} (f_j / p_j) E_j,
/// from 1/d. Falls back to the diluted map when a plain step would lower the
/// likelihood. Stops on max|p - f| < tol, likelihood gain < tol, or max_iter
/// (then converged = false). The gain is that of the data log-likelihood
/// sum_j n_j log p_j, i.e. sample_size times the per-shot value; the history
/// records per-shot values.
ReconstructionResult mle_reconstruct(const CountRecord& counts, const Pom& pom, const MleOptions& opts = {});
ReconstructionResult mle_from_frequencies(std::span<const double> freqs, const Pom& pom,
                                          const MleOptions& opts = {}, double sample_size = 1.0);

/// Dispatches on method; `sic` must be a SIC POM for the linear methods.
ReconstructionResult reconstruct(Method method, const CountRecord& counts, const Pom& pom,
                                 const MleOptions& opts = {});
ReconstructionResult reconstruct(Method method, std::span<const double> freqs, const Pom& pom,
                                 const MleOptions& opts = {});

/// Fills fidelity (physical estimates only) and trace distance.
void attach_metrics(ReconstructionResult& r, const DensityMatrix& truth);

}  // namespace sicpom
