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
#include <random>
#include <span>
#include <string>
#include <vector>

#include "sicpom/quantum.hpp"

namespace sicpom {

/// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed of the stream with the given index: splitmix64(splitmix64(seed) + index).
/// Every sampling routine that batches work uses stream index = batch number,
/// so results do not depend on how batches are scheduled.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Parses a decimal unsigned 64-bit seed. Throws ConfigError on anything else
/// (signs, whitespace, hex, overflow).
std::uint64_t parse_seed(const std::string& text);

/// mt19937_64 with locally defined uniform and normal variates, so that a
/// seed fixes the output bit for bit regardless of the standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  static Rng stream(std::uint64_t seed, std::uint64_t index) { return Rng(derive_seed(seed, index)); }

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal via Box-Muller.
  double normal();
  /// Index i with probability proportional to cdf[i] - cdf[i-1]; `cdf` is
  /// non-decreasing and its last entry is the total mass.
  std::size_t categorical(std::span<const double> cdf);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Cumulative sums of probabilities.
std::vector<double> cumulative(std::span<const double> probabilities);

/// Normalized complex Gaussian vector.
Ket random_pure_ket(Index dim, Rng& rng);
DensityMatrix random_pure_state(Index dim, Rng& rng);
/// G G^dagger / tr with square complex Gaussian G (Hilbert-Schmidt measure).
DensityMatrix random_mixed_state(Index dim, Rng& rng);
/// Haar-random unitary (QR of a complex Gaussian matrix with phase fix).
Matrix random_unitary(Index dim, Rng& rng);

}  // namespace sicpom
