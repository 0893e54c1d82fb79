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

#include <string>
#include <vector>

#include "rydtqd/atom.hpp"

namespace rydtqd::pulse {

// Linearly chirped Gaussian: Omega0 exp(-(t-T/2)^2/tau^2), Delta = 2 Delta0 (t-T/2)/T.
struct LcgParams {
  double T = 0.0;       // us
  double omega0 = 0.0;  // rad/us
  double tau = 0.0;     // us
  double delta0 = 0.0;  // rad/us
  void validate() const;
};

// Zero-chirp hyper-Gaussian pair; red peaks at T/3, blue at 2T/3.
struct ZchgParams {
  double T = 0.0;
  double omega_b0 = 0.0;
  double omega_r0 = 0.0;
  double tau_b = 0.0;
  double tau_r = 0.0;
  double delta_b = 0.0;  // signed, rad/us
  void validate() const;
  // |Delta_B| / max(Omega_B0, Omega_R0); values below 5 weaken adiabatic elimination.
  double elimination_ratio() const;
};

struct LcgSample {
  double omega, delta, omega_dot, delta_dot;
};
struct ZchgSample {
  double omega_b, omega_r, delta_b, omega_b_dot, omega_r_dot;
};

LcgSample lcg_eval(const LcgParams& p, double t);
ZchgSample zchg_eval(const ZchgParams& p, double t);

// Generic two-level transitionless-driving step for a coupling (omega, delta) and its derivatives.
struct EffectiveSample {
  double omega, delta, omega_dot, delta_dot;
};
struct TqdTwoLevel {
  double omega_c;      // control coupling
  double omega_tilde;  // sqrt(omega^2 + omega_c^2)
  double delta_tilde;  // delta + dtheta/dt
};

struct TqdDipole {
  double omega;  // single-atom Rabi frequency
  double delta;
};
struct TqdQuadrupole {
  double omega_b, omega_r, delta_b;
  double omega_eff, delta_eff;  // transformed effective two-photon coefficients
};

TqdDipole tqd_dipole(const LcgParams& p, double t);
TqdQuadrupole tqd_quadrupole(const ZchgParams& p, double t);

// Blue/red Rabi pair realizing the effective coefficients (inverse of the elimination map).
void invert_effective(double omega_eff, double delta_eff, double delta_b, double& omega_b, double& omega_r);
// Effective two-photon coefficients of a blue/red pair.
void effective_coefficients(double omega_b, double omega_r, double delta_b, double& omega_eff, double& delta_eff);

enum class Family { Adiabatic, Ctqd };
const char* to_string(Family f);

// A single pulse of duration T, either the analytic family or its TQD transform.
class BasePulse {
 public:
  static BasePulse lcg(const LcgParams& p, Family f);
  static BasePulse zchg(const ZchgParams& p, Family f);

  atom::ExcitationKind kind() const { return kind_; }
  Family family() const { return family_; }
  double duration() const;
  const LcgParams& lcg_params() const { return lcg_; }
  const ZchgParams& zchg_params() const { return zchg_; }

  // Drive at local time t in [0, T]; phase left at zero.
  atom::Drive drive(double t) const;
  // Largest single-laser Rabi frequency at t (dipole: Omega; quadrupole: max of blue and red).
  double peak_rabi(double t) const;
  // Generalized single-atom Rabi frequency sqrt(Omega^2 + Delta^2); quadrupole uses the
  // effective two-photon coefficients.
  double generalized_rabi(double t) const;
  // Plain Rabi magnitude entering the area: dipole Omega, quadrupole Omega_eff / sqrt(2).
  double rabi(double t) const;

 private:
  atom::ExcitationKind kind_ = atom::ExcitationKind::Dipole;
  Family family_ = Family::Adiabatic;
  LcgParams lcg_;
  ZchgParams zchg_;
};

struct Segment {
  double start;
  double duration;
  bool mirrored;  // evaluates the base at T - t'
  double phase;   // rad
};

class PulseSchedule {
 public:
  PulseSchedule(BasePulse base, std::vector<Segment> segments);

  const BasePulse& base() const { return base_; }
  const std::vector<Segment>& segments() const { return segs_; }
  double total_duration() const;

  // Drive at segment-local time.
  atom::Drive drive(std::size_t segment, double local_t) const;
  // Drive at absolute time; boundaries resolve to the later segment.
  atom::Drive drive_at(double t) const;
  std::size_t segment_at(double t) const;

 private:
  BasePulse base_;
  std::vector<Segment> segs_;
};

// Two contiguous copies of the base pulse with zero phase (adiabatic double-pulse gate).
PulseSchedule build_double(const BasePulse& base, bool mirror_second);
// Four segments with phases [0, phi_r, phi_R, phi_R + phi_r].
PulseSchedule build_sequence(const BasePulse& base, double phi_r, double phi_R, bool mirror_second);

struct PulseArea {
  double generalized_over_2pi;  // integral of sqrt(Omega^2 + Delta^2) / 2 pi
  double rabi_over_2pi;         // integral of Omega / 2 pi
};
PulseArea pulse_area(const PulseSchedule& s, std::size_t samples_per_segment = 4000);

// Peak over a schedule of the largest single-laser Rabi frequency.
double peak_rabi(const BasePulse& base, std::size_t samples = 2000);

// Rescales the duration of LCG parameters keeping tau / T.
LcgParams with_duration(const LcgParams& p, double T);
ZchgParams with_duration(const ZchgParams& p, double T);

struct TminResult {
  double t_min;
  double final_population;
  double peak_ratio;
};

// Smallest T such that the effective two-level TQD pulse transfers |11> -> |+> above 0.99 and
// max Omega~ <= 1.1 max Omega. `resolution` bounds the bisection width.
TminResult min_pulse_duration(const LcgParams& p, double t_lo = 0.005, double t_hi = 0.5,
                              double resolution = 1e-4);

// Final |+> population and peak ratio at a given T (exposed for the linear-scan oracle).
void tmin_conditions(const LcgParams& p, double& population, double& peak_ratio);

}  // namespace rydtqd::pulse
