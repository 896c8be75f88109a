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

#include <doctest.h>

#include <cmath>

#include "sicpom/errors.hpp"
#include "sicpom/experiment.hpp"
#include "sicpom/random.hpp"

using namespace sicpom;

namespace {

Json base_config() {
  return Json::parse(R"({
    "state": {"source": "random-pure", "dim": 4},
    "scheme": "optical",
    "shots": 20000,
    "seed": 12,
    "methods": ["linear", "linear-projected", "mle"]
  })");
}

void expect_config_error(const Json& j, const std::string& fragment) {
  CAPTURE(j.dump());
  CHECK_THROWS_WITH_AS(parse_experiment_config(j), doctest::Contains(fragment.c_str()), ConfigError);
}

}  // namespace

TEST_CASE("config parsing") {
  const ExperimentConfig cfg = parse_experiment_config(base_config());
  CHECK(cfg.scheme == Scheme::Optical);
  CHECK(cfg.shots == 20000);
  CHECK(cfg.methods.size() == 3);
  CHECK(parse_experiment_config(config_to_json(cfg)).seed == 12);

  Json j = base_config();
  j["shots"] = 0;
  expect_config_error(j, "config.shots");
  j = base_config();
  j["shots"] = -5;
  expect_config_error(j, "config.shots");
  j = base_config();
  j["scheme"] = "teleport";
  expect_config_error(j, "config.scheme");
  j = base_config();
  j["extra"] = 1;
  expect_config_error(j, "config.extra");
  j = base_config();
  j["methods"] = Json::array({"mle", "mle"});
  expect_config_error(j, "config.methods[1]");
  j = base_config();
  j["methods"] = Json::array({"bayes"});
  expect_config_error(j, "config.methods[0]");
  j = base_config();
  j["state"]["dim"] = 3;
  expect_config_error(j, "config.state.dim");
  j = base_config();
  j["state"] = Json::parse(R"({"source": "file"})");
  expect_config_error(j, "config.state.path");
  j = base_config();
  j.erase("seed");
  expect_config_error(j, "config.seed");
  j = base_config();
  j["mle"] = Json::parse(R"({"tol": -1})");
  expect_config_error(j, "config.mle.tol");

  j = base_config();
  j["state"] = Json::parse(R"({"source": "file", "path": "s.json"})");
  CHECK(parse_experiment_config(j, "/data").state.path == "/data/s.json");
}

TEST_CASE("schemes agree") {
  Rng rng(71);
  for (int t = 0; t < 20; ++t) {
    const DensityMatrix rho = t % 2 ? random_mixed_state(4, rng) : random_pure_state(4, rng);
    CHECK(scheme_discrepancy(rho) < 1e-10);
    const auto direct = scheme_distribution(rho, Scheme::Direct);
    const auto optical = scheme_distribution(rho, Scheme::Optical);
    for (std::size_t j = 0; j < 16; ++j) CHECK(std::abs(direct[j] - optical[j]) < 1e-10);
  }
  CHECK(scheme_discrepancy(random_pure_state(2, rng)) < 1e-10);
  for (Scheme s : {Scheme::Direct, Scheme::TwoStep, Scheme::Optical}) {
    CHECK(scheme_from_string(to_string(s)) == s);
    CHECK(validate_sic(scheme_pom(s, 4), 1e-10).passed());
    CHECK(validate_sic(scheme_pom(s, 2), 1e-10).passed());
  }
  CHECK(pom_id(Scheme::TwoStep, 4) == "sic4-two-step");
}

TEST_CASE("experiments are deterministic") {
  for (const char* scheme : {"direct", "two-step", "optical"}) {
    Json j = base_config();
    j["scheme"] = scheme;
    const ExperimentConfig cfg = parse_experiment_config(j);
    const std::string a = report_to_json(run_experiment(cfg)).dump();
    const std::string b = report_to_json(run_experiment(cfg)).dump();
    CHECK(a == b);
    CHECK(a.find("wall_clock_ms") == std::string::npos);
  }
  ExperimentConfig cfg = parse_experiment_config(base_config());
  const Json r = report_to_json(run_experiment(cfg));
  CHECK(r["reconstructions"].size() == 3);
  CHECK(r["scheme_discrepancy"].get<double>() < 1e-10);
  cfg.seed = 13;
  CHECK(report_to_json(run_experiment(cfg)).dump() != r.dump());
  cfg.timing = true;
  CHECK(report_to_json(run_experiment(cfg)).dump().find("wall_clock_ms") != std::string::npos);
}

TEST_CASE("quartiles") {
  const Quartiles q = quartiles({4, 1, 3, 2, 5});
  CHECK(q.q1 == doctest::Approx(2.0));
  CHECK(q.median == doctest::Approx(3.0));
  CHECK(q.q3 == doctest::Approx(4.0));
  const Quartiles e = quartiles({1, 2, 3, 4});
  CHECK(e.median == doctest::Approx(2.5));
  CHECK(e.q1 == doctest::Approx(1.75));
  CHECK(e.q3 == doctest::Approx(3.25));
  CHECK(quartiles({7}).median == 7.0);
  CHECK_THROWS(quartiles({}));
}

TEST_CASE("bench results do not depend on the job count") {
  BenchConfig cfg;
  cfg.trials = 6;
  cfg.shots = 5000;
  cfg.seed = 3;
  cfg.jobs = 1;
  const std::string one = bench_to_json(run_bench(cfg)).dump();
  cfg.jobs = 3;
  const std::string three = bench_to_json(run_bench(cfg)).dump();
  CHECK(one == three);
  cfg.mixed = true;
  cfg.dim = 2;
  const BenchResult r = run_bench(cfg);
  REQUIRE(r.methods.size() == 3);
  CHECK(r.methods[0].fidelities.size() == 6);
  for (const auto& m : r.methods)
    if (m.method != Method::Linear) CHECK(m.unphysical == 0);
}
