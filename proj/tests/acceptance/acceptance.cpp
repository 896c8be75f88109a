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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "sicpom/experiment.hpp"
#include "sicpom/io.hpp"
#include "sicpom/optics.hpp"
#include "sicpom/random.hpp"
#include "sicpom/sic.hpp"
#include "sicpom/successive.hpp"
#include "sicpom/tomography.hpp"

using namespace sicpom;

namespace {

constexpr std::uint64_t kSeed = 2026;

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
    }
  }
  void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

double median(std::vector<double> xs) { return quartiles(std::move(xs)).median; }

bool report(int id, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.passed = false;
    o.note(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_s > 0) o.require(secs < limit_s, "runtime " + num(secs) + " s >= " + num(limit_s) + " s");
  std::printf("criterion %2d: %s (%.2f s) %s\n", id, o.passed ? "PASS" : "FAIL", secs, o.detail.c_str());
  std::fflush(stdout);
  return o.passed;
}

void criterion1(Outcome& o) {
  const FiducialSet fid = fiducial_kets();
  double worst = 0.0;
  int pairs = 0;
  for (std::size_t i = 0; i < fid.kets().size(); ++i)
    for (std::size_t j = i + 1; j < fid.kets().size(); ++j) {
      worst = std::max(worst, std::abs(fidelity_pure(fid.kets()[i], fid.kets()[j]) - 0.2));
      ++pairs;
    }
  const double completeness = sic_pom(4).completeness_residual();
  o.require(pairs == 120, "120 pairs");
  o.require(worst < 1e-12, "pairwise fidelity");
  o.require(completeness < 1e-12, "completeness");
  o.note("pairs " + std::to_string(pairs) + ", max |F-0.2| " + num(worst) + ", completeness " + num(completeness));
}

void criterion2(Outcome& o) {
  const ValidationReport r = validate_mub(mub_bases(), 1e-12);
  double worst_unbiased = 0.0;
  double worst_orth = 0.0;
  int unbiased = 0;
  for (const auto& c : r.checks()) {
    if (c.name.rfind("unbiased.", 0) == 0) {
      ++unbiased;
      worst_unbiased = std::max(worst_unbiased, c.measured);
    } else if (c.name.rfind("orthonormal.", 0) == 0) {
      worst_orth = std::max(worst_orth, c.measured);
    }
  }
  o.require(r.passed(), "MUB report");
  o.require(unbiased == 10, "10 basis pairs");
  o.note("pairs " + std::to_string(unbiased) + ", max unbiasedness residual " + num(worst_unbiased) +
         ", max orthonormality residual " + num(worst_orth));
}

std::string permutation_text(const MatchReport& m) {
  std::string s;
  for (std::size_t k = 0; k < m.port_to_matrix.size(); ++k)
    s += (k ? " " : "") + std::to_string(k + 1) + "->" + std::to_string(m.port_to_matrix[k]);
  return s;
}

void criterion3(Outcome& o) {
  const Pom composed = compose_two_step(two_step_scheme_d4());
  const MatchReport a = match_to_sic(composed, fiducial_kets(), 1e-12);
  const MatchReport b = match_to_sic(compose_two_step(two_step_scheme_d4()), fiducial_kets(), 1e-12);
  o.require(a.passed, "one-to-one match");
  o.require(a.max_distance < 1e-12, "projector distance");
  o.require(a.port_to_matrix == b.port_to_matrix, "stable permutation");
  o.note("max projector distance " + num(a.max_distance) + ", port->matrix " + permutation_text(a));
}

void criterion4(Outcome& o) {
  const Pom pom = compose_two_step(two_step_scheme_d2());
  double worst_f = 0.0;
  double worst_dot = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) {
      const Matrix a = pom[i].matrix() / pom[i].matrix().trace().real();
      const Matrix b = pom[j].matrix() / pom[j].matrix().trace().real();
      worst_f = std::max(worst_f, std::abs((a * b).trace().real() - 1.0 / 3));
      worst_dot = std::max(worst_dot, std::abs(bloch_vector_of(pom[i].matrix()).dot(bloch_vector_of(pom[j].matrix())) + 1.0 / 3));
    }
  const KrausSet k = kraus_first_stage_d2();
  const Matrix z = pauli(3) / std::sqrt(3.0);
  const double first = std::max(max_abs_entry(k.effect(0) - 0.5 * (identity(2) - z)),
                                max_abs_entry(k.effect(1) - 0.5 * (identity(2) + z)));
  o.require(worst_f < 1e-12, "pairwise fidelity 1/3");
  o.require(worst_dot < 1e-10, "Bloch dot products");
  o.require(first < 1e-12, "first-stage effects");
  o.note("max |F-1/3| " + num(worst_f) + ", max |dot+1/3| " + num(worst_dot) + ", first stage " + num(first));
}

void criterion5(Outcome& o) {
  const PhotonicCircuit c = build_first_stage_bench_d4();
  const auto ports = port_kraus(c);
  const KrausSet k = kraus_first_stage_d4();
  double kraus = 0.0;
  for (std::size_t j = 0; j < 4; ++j) kraus = std::max(kraus, phase_invariant_distance(ports[j].kraus, k[j]));
  o.require(ports.size() == 4 && kraus < 1e-10, "port Kraus");

  const FirstStageParameters p = first_stage_parameters();
  const double n = sic_norm();
  const double chi = sic_chi();
  const double params = std::max({std::abs(p.r1 - 1 / n), std::abs(p.r2 - 1 / std::sqrt(n * n - 1)),
                                  std::abs(p.y - 1 / std::sqrt(n * n - 2))});
  const double products = std::max({std::abs(p.t1() * p.r2 - 1 / n), std::abs(p.t1() * p.t2() * p.y - 1 / n),
                                    std::abs(p.t1() * p.t2() * std::sqrt(1 - p.y * p.y) - chi / n)});
  o.require(params < 1e-12, "reflectivities");
  o.require(products < 1e-12, "amplitude products");

  const Pom full = full_bench_pom();
  const ValidationReport v = validate_sic(full, 1e-10);
  const MatchReport m = match_to_sic(full, fiducial_kets(), 1e-10);
  o.require(v.passed(), "full bench SIC property");
  o.require(full.completeness_residual() < 1e-10, "full bench completeness");
  o.require(m.passed && m.max_distance < 1e-10, "full bench match");
  o.note("port Kraus " + num(kraus) + ", products " + num(products) + ", full bench pairwise " +
         num(v.find("pairwise_fidelity")->measured) + ", match " + num(m.max_distance) + " (" + permutation_text(m) +
         ")");
}

void criterion6(Outcome& o) {
  std::string counts;
  double worst = 0.0;
  for (int k = 1; k <= 4; ++k) {
    const PhotonicCircuit c = build_basis_circuit(k);
    const double d = phase_invariant_distance(port_kraus(c).front().kraus, mub_unitary(k));
    worst = std::max(worst, d);
    const std::size_t ent = c.count_entangling();
    o.require(ent == (k <= 2 ? 0u : 1u), "entangling count of U" + std::to_string(k));
    counts += (k > 1 ? "/" : "") + std::to_string(ent);
  }
  o.require(worst < 1e-12, "unitaries up to phase");
  o.note("max distance " + num(worst) + ", CZ counts " + counts);
}

void criterion7(Outcome& o) {
  Rng rng = Rng::stream(kSeed, 7);
  const Pom sic = sic_pom(4);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const DensityMatrix rho = random_mixed_state(4, rng);
    worst = std::max(worst, (linear_inversion(outcome_distribution(rho, sic), sic) - rho.matrix()).norm());
  }
  o.require(worst < 1e-10, "Frobenius recovery");
  o.note("100 states, max Frobenius error " + num(worst));
}

struct Trial {
  double lp = 0.0;
  double mle = 0.0;
  bool monotone = true;
  bool converged = true;
};

// Same seeding as run_bench: trial i draws its state on stream 0 and its
// counts on stream 1 of derive_seed(seed, i).
Trial run_trial(std::uint64_t seed, std::size_t i, std::uint64_t shots) {
  const std::uint64_t trial_seed = derive_seed(seed, i);
  Rng rng = Rng::stream(trial_seed, 0);
  const DensityMatrix truth = random_pure_state(4, rng);
  MleOptions mle;
  mle.record_history = true;
  const TrialOutcome out = simulate_and_reconstruct(truth, Scheme::Direct, shots, derive_seed(trial_seed, 1),
                                                    {Method::LinearProjected, Method::Mle}, mle);
  Trial t;
  t.lp = out.results[0].fidelity.value();
  t.mle = out.results[1].fidelity.value();
  const auto& h = out.results[1].log_likelihood_history;
  for (std::size_t k = 1; k < h.size(); ++k) t.monotone = t.monotone && h[k] >= h[k - 1] - 1e-12;
  t.converged = out.results[1].converged;
  return t;
}

void criterion8(Outcome& o) {
  const std::size_t trials = 20;
  std::vector<double> medians_lp;
  std::vector<double> medians_mle;
  bool monotone = true;
  std::size_t unconverged = 0;
  for (std::uint64_t shots : {1000ULL, 10000ULL, 100000ULL, 1000000ULL}) {
    std::vector<double> lp;
    std::vector<double> mle;
    for (std::size_t i = 0; i < trials; ++i) {
      const Trial t = run_trial(kSeed, i, shots);
      lp.push_back(t.lp);
      mle.push_back(t.mle);
      monotone = monotone && t.monotone;
      unconverged += !t.converged;
    }
    medians_lp.push_back(median(lp));
    medians_mle.push_back(median(mle));
  }
  o.require(medians_lp.back() > 0.999, "linear-projected median fidelity > 0.999 at 1e6 shots");
  o.require(medians_mle.back() > 0.999, "MLE median fidelity > 0.999 at 1e6 shots");
  o.require(monotone, "MLE log-likelihood non-decreasing");
  bool sweep = true;
  for (std::size_t k = 1; k < medians_lp.size(); ++k)
    sweep = sweep && medians_lp[k] > medians_lp[k - 1] && medians_mle[k] > medians_mle[k - 1];
  o.require(sweep, "median infidelity decreasing over shots");
  std::ostringstream s;
  s.precision(6);
  s << "median fidelity over shots 1e3..1e6: linear-projected";
  for (double m : medians_lp) s << ' ' << m;
  s << ", mle";
  for (double m : medians_mle) s << ' ' << m;
  s << ", unconverged mle runs " << unconverged;
  o.note(s.str());
}

void criterion9(Outcome& o) {
  Rng rng = Rng::stream(kSeed, 9);
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const DensityMatrix rho = t % 2 ? random_mixed_state(4, rng) : random_pure_state(4, rng);
    worst = std::max(worst, scheme_discrepancy(rho));
  }
  o.require(worst < 1e-10, "scheme distributions agree");

  const DensityMatrix rho = random_pure_state(4, rng);
  const std::uint64_t shots = 1000000;
  const auto counts = sample_sequential(rho, two_step_scheme_d4(), shots, derive_seed(kSeed, 9));
  const auto direct = scheme_distribution(rho, Scheme::Direct);
  double worst_sigma = 0.0;
  for (std::size_t j = 0; j < direct.size(); ++j) {
    const double n = static_cast<double>(shots);
    const double sd = std::sqrt(n * direct[j] * (1 - direct[j]));
    const double dev = std::abs(static_cast<double>(counts[j]) - n * direct[j]);
    worst_sigma = std::max(worst_sigma, sd > 0 ? dev / sd : dev);
  }
  o.require(worst_sigma <= 5.0, "sequential sampling within 5 sigma");
  o.note("max discrepancy " + num(worst) + " over 20 states, sequential sampling max deviation " + num(worst_sigma) +
         " sigma");
}

void criterion10(Outcome& o) {
  ExperimentConfig cfg;
  cfg.state.source = StateSpec::Source::RandomPure;
  cfg.scheme = Scheme::Optical;
  cfg.shots = 100000;
  cfg.seed = kSeed;
  cfg.methods = {Method::Linear, Method::LinearProjected, Method::Mle};
  const std::string a = report_to_json(run_experiment(cfg)).dump(2);
  const std::string b = report_to_json(run_experiment(cfg)).dump(2);
  o.require(a == b, "library reports identical");

  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "sicpom_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string config = (dir / "config.json").string();
  write_atomic(config, config_to_json(cfg).dump(2));
  std::ostringstream out;
  std::ostringstream err;
  const int c1 = cli::run({"--output", (dir / "a.json").string(), "experiment", "--config", config}, out, err);
  const int c2 = cli::run({"--output", (dir / "b.json").string(), "experiment", "--config", config}, out, err);
  o.require(c1 == 0 && c2 == 0, "CLI runs succeed: " + err.str());
  const std::string fa = read_file((dir / "a.json").string());
  const std::string fb = read_file((dir / "b.json").string());
  o.require(fa == fb, "CLI report files identical");
  fs::remove_all(dir);
  o.note("report sizes " + std::to_string(a.size()) + " and " + std::to_string(fa.size()) + " bytes");
}

}  // namespace

int main() {
  bool ok = true;
  ok &= report(1, 1.0, criterion1);
  ok &= report(2, 1.0, criterion2);
  ok &= report(3, 0.0, criterion3);
  ok &= report(4, 0.0, criterion4);
  ok &= report(5, 5.0, criterion5);
  ok &= report(6, 0.0, criterion6);
  ok &= report(7, 5.0, criterion7);
  ok &= report(8, 120.0, criterion8);
  ok &= report(9, 0.0, criterion9);
  ok &= report(10, 0.0, criterion10);
  std::printf("%s\n", ok ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
  return ok ? 0 : 1;
}
