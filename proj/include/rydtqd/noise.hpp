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


#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "rydtqd/atom.hpp"
#include "rydtqd/dynamics.hpp"
#include "rydtqd/pulse.hpp"

namespace rydtqd::noise {

// exp(-(x^2+y^2)/(w^2(1+z^2/L^2))) / sqrt(1+z^2/L^2) for a Gaussian beam of waist w and Rayleigh length L.
double spatial_form_factor(const std::array<double, 3>& r_um, const atom::LaserGeometry& laser);

// Which imperfections are sampled. Decay is a separate switch of the master equation.
struct NoiseToggles {
  bool decay = true;
  bool position = true;
  bool intensity = true;
  bool doppler = true;
  bool magnetic = true;

  static NoiseToggles none() { return {false, false, false, false, false}; }
  static NoiseToggles decay_only() { return {true, false, false, false, false}; }
};

struct AtomRealization {
  std::array<double, 3> position{0.0, 0.0, 0.0};  // um
  std::array<double, 2> spatial{1.0, 1.0};
  std::array<double, 2> intensity{1.0, 1.0};
  double doppler = 0.0;   // rad/us
  double magnetic = 0.0;  // rad/us

  atom::AtomNoise factors() const;
};

struct NoiseRealization {
  AtomRealization atoms[2];
};

// Standard deviations of the quasi-static detuning shifts, sqrt(2)/T2.
double doppler_sigma(const atom::AtomModel& model);
double magnetic_sigma(const atom::AtomModel& model);

// Draws both atoms independently.
NoiseRealization sample_noise(const atom::AtomModel& model, std::mt19937_64& rng, const NoiseToggles& toggles = {});

// Generator of run `index` of an ensemble seeded with `seed`.
std::mt19937_64 run_generator(std::uint64_t seed, std::uint64_t index);

struct McSummary {
  std::size_t n_runs = 0;
  std::vector<double> fidelities;
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(n)
  double max_trace_error = 0.0;
};

// Mean and standard error of a fidelity list.
McSummary summarize(std::vector<double> fidelities);

// n_runs GKSL runs with fresh noise for both atoms, finalized with the fixed phase `phi`.
McSummary run_monte_carlo(const atom::AtomModel& model, const pulse::PulseSchedule& schedule, double phi,
                          const NoiseToggles& toggles, std::size_t n_runs, std::uint64_t seed, int workers,
                          const dynamics::IntegratorConfig& cfg);

}  // namespace rydtqd::noise
