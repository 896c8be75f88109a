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

#include "sicpom/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "sicpom/errors.hpp"
#include "sicpom/random.hpp"
#include "sicpom/sic.hpp"

namespace sicpom {

void CountRecord::validate() const {
  if (labels.size() != counts.size()) throw InvariantError("CountRecord: labels and counts differ in length");
  const std::uint64_t total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  if (total != shots) {
    std::ostringstream msg;
    msg << "CountRecord: counts sum to " << total << " but shots = " << shots;
    throw InvariantError(msg.str());
  }
}

std::vector<double> CountRecord::frequencies() const {
  std::vector<double> f(counts.size(), 0.0);
  if (shots == 0) return f;
  for (std::size_t j = 0; j < counts.size(); ++j) {
    f[j] = static_cast<double>(counts[j]) / static_cast<double>(shots);
  }
  return f;
}

std::vector<double> outcome_distribution(const DensityMatrix& rho, const Pom& pom) {
  if (rho.dim() != pom.dim()) throw DimensionError("outcome_distribution: dimension mismatch");
  std::vector<double> p;
  p.reserve(pom.size());
  for (const auto& e : pom.effects()) p.push_back(born_probability(rho, e));
  return p;
}

CountRecord sample_counts(std::span<const double> dist, std::uint64_t shots, std::uint64_t seed,
                          std::vector<OutcomeLabel> labels, std::string pom_id) {
  if (dist.empty()) throw InvariantError("sample_counts: empty distribution");
  std::vector<double> p(dist.begin(), dist.end());
  for (double& x : p) {
    if (x < -kProbabilityClamp) {
      std::ostringstream msg;
      msg << "sample_counts: negative probability " << x;
      throw InvariantError(msg.str());
    }
    x = std::max(x, 0.0);
  }
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  if (!(std::abs(total - 1.0) <= 1e-9)) {
    std::ostringstream msg;
    msg << "sample_counts: probabilities sum to " << total;
    throw InvariantError(msg.str());
  }
  if (labels.empty()) {
    int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(p.size()))));
    if (static_cast<std::size_t>(d * d) != p.size()) throw DimensionError("sample_counts: labels required");
    labels = lexicographic_labels(d);
  }
  if (labels.size() != p.size()) throw DimensionError("sample_counts: one label per probability required");

  const std::vector<double> cdf = cumulative(p);
  CountRecord rec{std::move(pom_id), shots, std::move(labels), std::vector<std::uint64_t>(p.size(), 0)};
  constexpr std::uint64_t kBatch = 65536;
  for (std::uint64_t batch = 0; batch * kBatch < shots; ++batch) {
    Rng rng = Rng::stream(seed, batch);
    const std::uint64_t n = std::min(kBatch, shots - batch * kBatch);
    for (std::uint64_t s = 0; s < n; ++s) ++rec.counts[rng.categorical(cdf)];
  }
  return rec;
}

Matrix linear_inversion(std::span<const double> freqs, const Pom& sic) {
  const Index d = sic.dim();
  if (freqs.size() != sic.size()) throw DimensionError("linear_inversion: one frequency per effect required");
  if (!validate_sic(sic, 1e-10).passed()) throw InvariantError("linear_inversion: POM is not a SIC POM");
  const double dd = static_cast<double>(d);
  Matrix rho = Matrix::Zero(d, d);
  for (std::size_t j = 0; j < sic.size(); ++j) {
    rho += ((dd + 1.0) * freqs[j] - 1.0 / dd) * dd * sic[j].matrix();
  }
  return 0.5 * (rho + rho.adjoint());
}

std::vector<double> project_to_simplex(std::vector<double> v) {
  // Sort-based Euclidean projection onto {x >= 0, sum x = 1}.
  std::vector<double> sorted = v;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumsum = 0.0;
  double theta = 0.0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    cumsum += sorted[k];
    const double candidate = (cumsum - 1.0) / static_cast<double>(k + 1);
    if (sorted[k] - candidate > 0.0) theta = candidate;
  }
  for (double& x : v) x = std::max(x - theta, 0.0);
  return v;
}

DensityMatrix project_to_physical(const Matrix& h) {
  if (h.rows() != h.cols()) throw DimensionError("project_to_physical: matrix not square");
  const double herm = hermiticity_residual(h);
  if (!(herm <= 1e-10)) {
    std::ostringstream msg;
    msg << "project_to_physical: input not Hermitian (residual " << herm << ")";
    throw InvariantError(msg.str());
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (h + h.adjoint()));
  const RealVector ev = solver.eigenvalues();
  std::vector<double> lambda(ev.data(), ev.data() + ev.size());
  lambda = project_to_simplex(std::move(lambda));
  RealVector projected = Eigen::Map<RealVector>(lambda.data(), static_cast<Index>(lambda.size()));
  const Matrix& vecs = solver.eigenvectors();
  const Matrix rho = vecs * projected.cast<cplx>().asDiagonal() * vecs.adjoint();
  return DensityMatrix::from_unnormalized(rho);
}

std::string to_string(Method m) {
  switch (m) {
    case Method::Linear: return "linear";
    case Method::LinearProjected: return "linear-projected";
    case Method::Mle: return "mle";
  }
  return "?";
}

Method method_from_string(const std::string& s) {
  if (s == "linear") return Method::Linear;
  if (s == "linear-projected") return Method::LinearProjected;
  if (s == "mle") return Method::Mle;
  throw ConfigError("unknown reconstruction method '" + s + "' (expected linear, linear-projected or mle)");
}

namespace {

std::vector<double> probabilities(const Matrix& rho, const Pom& pom) {
  // tr(E rho) = sum_ab E_ab rho_ba
  const Matrix rho_t = rho.transpose();
  std::vector<double> p(pom.size());
  for (std::size_t j = 0; j < pom.size(); ++j) p[j] = pom[j].matrix().cwiseProduct(rho_t).sum().real();
  return p;
}

double log_likelihood(std::span<const double> f, const std::vector<double>& p) {
  double ll = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (f[j] > 0.0) ll += f[j] * std::log(std::max(p[j], 1e-300));
  }
  return ll;
}

double max_deviation(std::span<const double> f, const std::vector<double>& p) {
  double m = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) m = std::max(m, std::abs(p[j] - f[j]));
  return m;
}

Matrix normalized_sandwich(const Matrix& left, const Matrix& rho) {
  Matrix next = left * rho * left.adjoint();
  next = 0.5 * (next + next.adjoint());
  return next / next.trace().real();
}

}  // namespace

ReconstructionResult mle_from_frequencies(std::span<const double> freqs, const Pom& pom, const MleOptions& opts,
                                          double sample_size) {
  if (freqs.size() != pom.size()) throw DimensionError("mle: one frequency per effect required");
  if (!(sample_size > 0.0)) throw InvariantError("mle: sample size must be positive");
  const double total = std::accumulate(freqs.begin(), freqs.end(), 0.0);
  if (!(total > 0.0)) throw InvariantError("mle: no counts");
  std::vector<double> f(freqs.begin(), freqs.end());
  for (double& x : f) x /= total;

  const Index d = pom.dim();
  const Matrix id = identity(d);
  Matrix rho = id / static_cast<double>(d);
  std::vector<double> p = probabilities(rho, pom);
  double ll = log_likelihood(f, p);

  ReconstructionResult res;
  res.method = Method::Mle;
  res.converged = false;
  res.min_likelihood_step = 0.0;
  bool first_step = true;
  double prev_gain = 0.0;
  if (opts.record_history) res.log_likelihood_history.push_back(ll);

  // Gain sum_j f_j log(p'_j / p_j), rewritten with x_j = (p'_j - p_j) / p_j and
  // sum_j (p'_j - p_j) = 0 as sum_j (f_j - p_j) x_j + f_j (log1p(x_j) - x_j).
  // Every term is then computed to full relative precision, so gains far
  // below the rounding of the log-likelihood itself stay resolvable.
  auto gain_of = [&](const Matrix& next) {
    const Matrix delta = next - rho;
    double g = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) {
      if (f[j] <= 0.0) {
        g -= (pom[j].matrix() * delta).trace().real();
        continue;
      }
      const double pj = std::max(p[j], 1e-300);
      const double x = (pom[j].matrix() * delta).trace().real() / pj;
      const double curvature = std::abs(x) < 1e-4 ? x * x * (-0.5 + x * (1.0 / 3 - 0.25 * x)) : std::log1p(x) - x;
      g += (f[j] - p[j]) * x + f[j] * curvature;
    }
    return g;
  };

  for (int it = 0; it < opts.max_iter; ++it) {
    if (max_deviation(f, p) < opts.tol) {
      res.converged = true;
      break;
    }
    Matrix r = Matrix::Zero(d, d);
    for (std::size_t j = 0; j < pom.size(); ++j) {
      if (f[j] > 0.0) r += (f[j] / std::max(p[j], 1e-300)) * pom[j].matrix();
    }
    Matrix next = normalized_sandwich(r, rho);
    double gain = gain_of(next);
    // Diluted steps (1 + eps R) increase the likelihood for small eps.
    double eps = 1.0;
    while (gain < 0.0 && eps > 1e-12) {
      eps *= 0.5;
      next = normalized_sandwich(id + eps * r, rho);
      gain = gain_of(next);
    }
    if (gain < 0.0) {
      // No ascent along R: rho is stationary.
      res.converged = true;
      break;
    }
    res.min_likelihood_step = first_step ? gain : std::min(res.min_likelihood_step, gain);
    first_step = false;
    rho = std::move(next);
    p = probabilities(rho, pom);
    ll = log_likelihood(f, p);
    res.iterations = it + 1;
    // Remaining increase up to the maximum, extrapolated from the ratio of
    // successive gains: gain * lambda / (1 - lambda) for a geometric tail.
    // Sublinear tails (lambda -> 1) keep the estimate large, as they should.
    double remaining = std::numeric_limits<double>::infinity();
    if (prev_gain > 0.0 && gain < prev_gain) {
      const double lambda = gain / prev_gain;
      remaining = gain * lambda / (1.0 - lambda);
    }
    prev_gain = gain;
    res.likelihood_delta = remaining * sample_size;
    if (opts.record_history) res.log_likelihood_history.push_back(ll);
    if (remaining * sample_size < opts.tol) {
      res.converged = true;
      break;
    }
  }
  if (!res.converged && max_deviation(f, p) < opts.tol) res.converged = true;
  const DensityMatrix est = DensityMatrix::from_unnormalized(rho);
  res.estimate = est.matrix();
  res.physical = true;
  res.max_probability_deviation = max_deviation(f, probabilities(res.estimate, pom));
  return res;
}

ReconstructionResult mle_reconstruct(const CountRecord& counts, const Pom& pom, const MleOptions& opts) {
  counts.validate();
  if (counts.shots == 0) throw InvariantError("mle_reconstruct: shots must be positive");
  return mle_from_frequencies(counts.frequencies(), pom, opts, static_cast<double>(counts.shots));
}

ReconstructionResult reconstruct(Method method, const CountRecord& counts, const Pom& pom, const MleOptions& opts) {
  counts.validate();
  if (counts.shots == 0) throw InvariantError("reconstruct: shots must be positive");
  if (method == Method::Mle) return mle_reconstruct(counts, pom, opts);
  return reconstruct(method, counts.frequencies(), pom, opts);
}

ReconstructionResult reconstruct(Method method, std::span<const double> freqs, const Pom& pom,
                                 const MleOptions& opts) {
  if (method == Method::Mle) return mle_from_frequencies(freqs, pom, opts);
  ReconstructionResult res;
  res.method = method;
  const Matrix lin = linear_inversion(freqs, pom);
  if (method == Method::Linear) {
    res.estimate = lin;
    res.physical = hermitian_eigenvalues(lin).minCoeff() >= -kPsdTol;
  } else {
    res.estimate = project_to_physical(lin).matrix();
    res.physical = true;
  }
  std::vector<double> p(pom.size());
  for (std::size_t j = 0; j < pom.size(); ++j) p[j] = (pom[j].matrix() * res.estimate).trace().real();
  res.max_probability_deviation = max_deviation(freqs, p);
  return res;
}

void attach_metrics(ReconstructionResult& r, const DensityMatrix& truth) {
  r.trace_distance = trace_distance(r.estimate, truth.matrix());
  if (r.physical) {
    r.fidelity = state_fidelity(DensityMatrix::from_unnormalized(r.estimate), truth);
  } else {
    r.fidelity.reset();
  }
}

}  // namespace sicpom
