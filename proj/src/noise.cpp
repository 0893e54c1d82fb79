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


#include "rydtqd/noise.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "rydtqd/gate.hpp"
#include "rydtqd/parallel.hpp"

namespace rydtqd::noise {

double spatial_form_factor(const std::array<double, 3>& r, const atom::LaserGeometry& laser) {
  if (!(laser.waist_um > 0.0) || !(laser.rayleigh_um > 0.0)) throw InvalidArgument("laser geometry must be positive");
  const double zr = r[2] / laser.rayleigh_um;
  const double spread = 1.0 + zr * zr;
  const double rho2 = r[0] * r[0] + r[1] * r[1];
  return std::exp(-rho2 / (laser.waist_um * laser.waist_um * spread)) / std::sqrt(spread);
}

atom::AtomNoise AtomRealization::factors() const {
  atom::AtomNoise n;
  n.spatial = spatial;
  n.intensity = intensity;
  n.detuning_shift = doppler + magnetic;
  return n;
}

double doppler_sigma(const atom::AtomModel& model) { return std::sqrt(2.0) / model.t2_doppler; }
double magnetic_sigma(const atom::AtomModel& model) { return std::sqrt(2.0) / model.t2_magnetic; }

namespace {

AtomRealization sample_atom(const atom::AtomModel& model, std::mt19937_64& rng, const NoiseToggles& t) {
  std::normal_distribution<double> unit(0.0, 1.0);
  AtomRealization a;
  // Draw order is fixed regardless of toggles so that switching one source leaves the others unchanged.
  for (int k = 0; k < 3; ++k) {
    const double x = unit(rng) * model.position_sigma[k];
    if (t.position) a.position[k] = x;
  }
  for (std::size_t l = 0; l < model.lasers.size(); ++l) {
    double radicand;
    do {
      radicand = 1.0 + unit(rng) * model.intensity_sigma[l];
    } while (radicand < 0.0);
    if (t.intensity) a.intensity[l] = std::sqrt(radicand);
    a.spatial[l] = spatial_form_factor(a.position, model.lasers[l]);
  }
  const double d = unit(rng) * doppler_sigma(model);
  const double m = unit(rng) * magnetic_sigma(model);
  if (t.doppler) a.doppler = d;
  if (t.magnetic) a.magnetic = m;
  return a;
}

}  // namespace

NoiseRealization sample_noise(const atom::AtomModel& model, std::mt19937_64& rng, const NoiseToggles& toggles) {
  model.validate();
  NoiseRealization r;
  r.atoms[0] = sample_atom(model, rng, toggles);
  r.atoms[1] = sample_atom(model, rng, toggles);
  return r;
}

std::mt19937_64 run_generator(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(index), std::uint32_t(index >> 32)};
  return std::mt19937_64(seq);
}

McSummary summarize(std::vector<double> fidelities) {
  McSummary s;
  s.n_runs = fidelities.size();
  if (s.n_runs == 0) return s;
  double sum = 0.0;
  for (double f : fidelities) sum += f;
  s.mean = sum / double(s.n_runs);
  if (s.n_runs > 1) {
    double ss = 0.0;
    for (double f : fidelities) ss += (f - s.mean) * (f - s.mean);
    s.std_error = std::sqrt(ss / double(s.n_runs - 1)) / std::sqrt(double(s.n_runs));
  }
  s.fidelities = std::move(fidelities);
  return s;
}

McSummary run_monte_carlo(const atom::AtomModel& model, const pulse::PulseSchedule& schedule, double phi,
                          const NoiseToggles& toggles, std::size_t n_runs, std::uint64_t seed, int workers,
                          const dynamics::IntegratorConfig& cfg) {
  if (n_runs < 1) throw InvalidArgument("n_runs must be at least 1");
  std::vector<double> f(n_runs);
  std::vector<double> trace_err(n_runs);
  parallel_for(n_runs, workers, [&](std::size_t i) {
    auto rng = run_generator(seed, i);
    const NoiseRealization r = sample_noise(model, rng, toggles);
    try {
      const auto run = gate::run_realistic(model, schedule, r.atoms[0].factors(), r.atoms[1].factors(), toggles.decay,
                                           phi, cfg);
      f[i] = run.fidelity;
      trace_err[i] = run.max_trace_error;
    } catch (const NumericError& e) {
      throw NumericError("Monte Carlo run " + std::to_string(i) + ": " + e.what());
    }
  });
  McSummary s = summarize(std::move(f));
  for (double e : trace_err) s.max_trace_error = std::max(s.max_trace_error, e);
  return s;
}

}  // namespace rydtqd::noise
