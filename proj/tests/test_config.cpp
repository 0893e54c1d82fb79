// Copyright 2025 The rydtqd Authors
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

#include <algorithm>
#include <string>

#include "rydtqd/config.hpp"

using namespace rydtqd;
using namespace rydtqd::config;

namespace {

const std::string kBase =
    "excitation = dipole\n"
    "family = ctqd\n"
    "gate_time = 0.12 us\n";

}  // namespace

TEST_CASE("units convert to internal rad/us and us") {
  const ExperimentConfig c = parse(kBase +
                                   "omega0 = 24.92 MHz\n"
                                   "delta0 = 49550 kHz\n"
                                   "phi_r = 0.4 pi\n"
                                   "phi_R = 90 deg\n"
                                   "max_step = 100 ns\n");
  CHECK(c.gate_time == doctest::Approx(0.12));
  CHECK(c.omega0 == doctest::Approx(kTwoPi * 24.92));
  CHECK(c.delta0 == doctest::Approx(kTwoPi * 49.55));
  CHECK(c.phi_r == doctest::Approx(0.4 * kPi));
  CHECK(c.phi_R == doctest::Approx(kPi / 2));
  CHECK(c.integrator.max_step == doctest::Approx(0.1));
  CHECK(c.pulse_duration() == doctest::Approx(0.03));

  const ExperimentConfig g = parse(kBase + "omega0 = 0.02492 GHz\n");
  CHECK(g.omega0 == doctest::Approx(kTwoPi * 24.92));
  const ExperimentConfig r = parse(kBase + "omega0 = 100 rad/us\n");
  CHECK(r.omega0 == doctest::Approx(100.0));
}

TEST_CASE("reference defaults fill unset pulse parameters") {
  const ExperimentConfig d = parse(kBase);
  CHECK(d.omega0 == doctest::Approx(kTwoPi * 24.92));
  CHECK(d.tau_ratio == doctest::Approx(0.266));
  const ExperimentConfig q = parse("excitation = quadrupole\nfamily = adiabatic\ngate_time = 1.62 us\n");
  CHECK(q.omega_b0 == doctest::Approx(kTwoPi * 300.0));
  CHECK(q.delta_b == doctest::Approx(-kTwoPi * 1762.90));
  CHECK(q.pulse_duration() == doctest::Approx(0.81));
}

TEST_CASE("malformed configurations report line and key") {
  try {
    parse(kBase + "\n# comment\nbogus_key = 3\n");
    FAIL("expected a ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 6);
    CHECK(e.key() == "bogus_key");
  }
  CHECK_THROWS_AS(parse(kBase + "omega0 = 1 MHz\nomega0 = 2 MHz\n"), ConfigError);
  CHECK_THROWS_AS(parse(kBase + "omega0 = 24.92\n"), ConfigError);        // missing unit
  CHECK_THROWS_AS(parse("excitation = dipole\nfamily = ctqd\ngate_time = 0.12 MHz\n"), ConfigError);
  CHECK_THROWS_AS(parse("family = ctqd\ngate_time = 0.12 us\n"), ConfigError);
  CHECK_THROWS_AS(parse(kBase + "mc_runs = -3\n"), ConfigError);
  CHECK_THROWS_AS(parse(kBase + "just some words\n"), ConfigError);
}

TEST_CASE("lists and scan grids") {
  const ExperimentConfig c = parse(kBase +
                                   "scan_variable = T_g\n"
                                   "scan_values = 0.12:0.2:0.04 us\n"
                                   "speedup_omegas = 10, 20, 30\n");
  REQUIRE(c.scan_values.size() == 3);
  CHECK(c.scan_values[2] == doctest::Approx(0.2));
  CHECK(c.speedup_omegas == std::vector<double>{10, 20, 30});
  CHECK_THROWS_AS(parse(kBase + "scan_variable = detuning\n"), ConfigError);
}

TEST_CASE("hash ignores seed, workers and output location") {
  const ExperimentConfig a = parse(kBase + "seed = 1\nworkers = 4\n");
  const ExperimentConfig b = parse(kBase + "seed = 99\nout_dir = /tmp/x\n");
  const ExperimentConfig c = parse(kBase + "omega0 = 20 MHz\n");
  CHECK(a.hash() == b.hash());
  CHECK(a.hash() != c.hash());
  CHECK(a.hash().size() == 16);
  CHECK(a.seed == 1);
  CHECK(b.seed == 99);
}

TEST_CASE("apply overrides a single key") {
  ExperimentConfig c = parse(kBase);
  apply(c, "seed", "7");
  CHECK(c.seed == 7);
  CHECK_THROWS_AS(apply(c, "nonsense", "1"), ConfigError);
  for (const char* k : {"excitation", "family", "gate_time", "phases", "monte_carlo", "out_dir"})
    CHECK(std::find(known_keys().begin(), known_keys().end(), k) != known_keys().end());
}

TEST_CASE("shipped configurations load") {
  for (const char* name : {"ctqd_dipole", "ctqd_quadrupole", "adiabatic_dipole", "adiabatic_quadrupole"}) {
    const ExperimentConfig c = load(std::string(RYDTQD_SOURCE_DIR) + "/configs/" + name + ".cfg");
    CHECK_NOTHROW(c.validate());
    CHECK(c.schedule().segments().size() == (c.family == pulse::Family::Ctqd ? 4u : 2u));
  }
  CHECK_THROWS(load("/nonexistent/path.cfg"));
}
