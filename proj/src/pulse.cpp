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

#include "rydtqd/pulse.hpp"

#include <algorithm>
#include <cmath>

namespace rydtqd::pulse {

namespace {

constexpr double kFdStep = 1e-5;     // us, central difference for dOmega_c/dt
constexpr double kFloor = 1e-12;     // removable-singularity floor
const double kSqrt2 = std::sqrt(2.0);

void require_range(double t, double T) {
  // Small slack so that accumulated time steps landing on T are accepted.
  if (!(t >= -1e-12 && t <= T + 1e-12)) throw InvalidArgument("pulse time outside [0, T]");
}

LcgSample lcg_raw(const LcgParams& p, double t) {
  const double x = t - 0.5 * p.T;
  const double g = std::exp(-x * x / (p.tau * p.tau));
  LcgSample s;
  s.omega = p.omega0 * g;
  s.omega_dot = s.omega * (-2.0 * x / (p.tau * p.tau));
  s.delta = 2.0 * p.delta0 * x / p.T;
  s.delta_dot = 2.0 * p.delta0 / p.T;
  return s;
}

ZchgSample zchg_raw(const ZchgParams& p, double t) {
  const double xb = t - 2.0 * p.T / 3.0, xr = t - p.T / 3.0;
  const double tb4 = std::pow(p.tau_b, 4), tr4 = std::pow(p.tau_r, 4);
  ZchgSample s;
  s.omega_b = p.omega_b0 * std::exp(-std::pow(xb, 4) / tb4);
  s.omega_r = p.omega_r0 * std::exp(-std::pow(xr, 4) / tr4);
  s.omega_b_dot = s.omega_b * (-4.0 * xb * xb * xb / tb4);
  s.omega_r_dot = s.omega_r * (-4.0 * xr * xr * xr / tr4);
  s.delta_b = p.delta_b;
  return s;
}

double control_coupling(const EffectiveSample& e) {
  const double den = std::max(e.delta * e.delta + e.omega * e.omega, kFloor);
  return (e.omega * e.delta_dot - e.delta * e.omega_dot) / den;
}

template <class EffFn>
TqdTwoLevel tqd_step(EffFn eff, double t) {
  const EffectiveSample e = eff(t);
  const double oc = control_coupling(e);
  const double oc_dot = (control_coupling(eff(t + kFdStep)) - control_coupling(eff(t - kFdStep))) / (2.0 * kFdStep);
  const double den = std::max(e.omega * e.omega + oc * oc, kFloor);
  const double theta_dot = (e.omega * oc_dot - oc * e.omega_dot) / den;
  return {oc, std::hypot(e.omega, oc), e.delta + theta_dot};
}

EffectiveSample dipole_effective(const LcgParams& p, double t) {
  const LcgSample s = lcg_raw(p, t);
  return {kSqrt2 * s.omega, s.delta, kSqrt2 * s.omega_dot, s.delta_dot};
}

EffectiveSample quad_effective(const ZchgParams& p, double t) {
  const ZchgSample s = zchg_raw(p, t);
  const double db = p.delta_b;
  EffectiveSample e;
  e.omega = -kSqrt2 * s.omega_b * s.omega_r / (2.0 * db);
  e.omega_dot = -kSqrt2 * (s.omega_b_dot * s.omega_r + s.omega_b * s.omega_r_dot) / (2.0 * db);
  e.delta = (s.omega_b * s.omega_b - s.omega_r * s.omega_r) / (4.0 * db);
  e.delta_dot = (2.0 * s.omega_b * s.omega_b_dot - 2.0 * s.omega_r * s.omega_r_dot) / (4.0 * db);
  return e;
}

}  // namespace

void LcgParams::validate() const {
  if (!(T > 0.0) || !(omega0 > 0.0) || !(tau > 0.0) || !(delta0 > 0.0))
    throw InvalidArgument("LCG parameters must be positive");
}

void ZchgParams::validate() const {
  if (!(T > 0.0) || !(omega_b0 > 0.0) || !(omega_r0 > 0.0) || !(tau_b > 0.0) || !(tau_r > 0.0))
    throw InvalidArgument("ZCHG parameters must be positive");
  if (!(std::abs(delta_b) > 0.0) || !std::isfinite(delta_b)) throw InvalidArgument("ZCHG detuning must be nonzero");
}

double ZchgParams::elimination_ratio() const { return std::abs(delta_b) / std::max(omega_b0, omega_r0); }

LcgSample lcg_eval(const LcgParams& p, double t) {
  require_range(t, p.T);
  return lcg_raw(p, t);
}

ZchgSample zchg_eval(const ZchgParams& p, double t) {
  require_range(t, p.T);
  return zchg_raw(p, t);
}

TqdDipole tqd_dipole(const LcgParams& p, double t) {
  require_range(t, p.T);
  const TqdTwoLevel r = tqd_step([&](double x) { return dipole_effective(p, x); }, t);
  return {r.omega_tilde / kSqrt2, r.delta_tilde};
}

TqdQuadrupole tqd_quadrupole(const ZchgParams& p, double t) {
  require_range(t, p.T);
  const TqdTwoLevel r = tqd_step([&](double x) { return quad_effective(p, x); }, t);
  TqdQuadrupole q;
  q.omega_eff = r.omega_tilde;
  q.delta_eff = r.delta_tilde;
  q.delta_b = p.delta_b;
  invert_effective(q.omega_eff, q.delta_eff, p.delta_b, q.omega_b, q.omega_r);
  return q;
}

void invert_effective(double omega_eff, double delta_eff, double delta_b, double& omega_b, double& omega_r) {
  const double r = std::sqrt(delta_eff * delta_eff + 0.5 * omega_eff * omega_eff);
  const double s = delta_b > 0.0 ? 1.0 : -1.0;
  const double a = std::abs(delta_b);
  const double rb = 2.0 * a * (r + s * delta_eff);
  const double rr = 2.0 * a * (r - s * delta_eff);
  // Both radicands are non-negative analytically; tolerate rounding only.
  const double tol = 1e-9 * 2.0 * a * std::max(r, 1.0);
  if (rb < -tol || rr < -tol) throw NumericError("negative radicand inverting the effective coupling");
  omega_b = std::sqrt(std::max(rb, 0.0));
  omega_r = std::sqrt(std::max(rr, 0.0));
}

void effective_coefficients(double omega_b, double omega_r, double delta_b, double& omega_eff, double& delta_eff) {
  omega_eff = -kSqrt2 * omega_b * omega_r / (2.0 * delta_b);
  delta_eff = (omega_b * omega_b - omega_r * omega_r) / (4.0 * delta_b);
}

const char* to_string(Family f) { return f == Family::Adiabatic ? "adiabatic" : "ctqd"; }

BasePulse BasePulse::lcg(const LcgParams& p, Family f) {
  p.validate();
  BasePulse b;
  b.kind_ = atom::ExcitationKind::Dipole;
  b.family_ = f;
  b.lcg_ = p;
  return b;
}

BasePulse BasePulse::zchg(const ZchgParams& p, Family f) {
  p.validate();
  BasePulse b;
  b.kind_ = atom::ExcitationKind::Quadrupole;
  b.family_ = f;
  b.zchg_ = p;
  return b;
}

double BasePulse::duration() const { return kind_ == atom::ExcitationKind::Dipole ? lcg_.T : zchg_.T; }

atom::Drive BasePulse::drive(double t) const {
  atom::Drive d;
  if (kind_ == atom::ExcitationKind::Dipole) {
    if (family_ == Family::Adiabatic) {
      const LcgSample s = lcg_eval(lcg_, t);
      d.omega = s.omega;
      d.delta = s.delta;
    } else {
      const TqdDipole s = tqd_dipole(lcg_, t);
      d.omega = s.omega;
      d.delta = s.delta;
    }
  } else {
    if (family_ == Family::Adiabatic) {
      const ZchgSample s = zchg_eval(zchg_, t);
      d.omega_b = s.omega_b;
      d.omega_r = s.omega_r;
    } else {
      const TqdQuadrupole s = tqd_quadrupole(zchg_, t);
      d.omega_b = s.omega_b;
      d.omega_r = s.omega_r;
    }
    d.delta_b = zchg_.delta_b;
    d.delta_br = 0.0;
  }
  return d;
}

double BasePulse::peak_rabi(double t) const {
  const atom::Drive d = drive(t);
  return kind_ == atom::ExcitationKind::Dipole ? d.omega : std::max(d.omega_b, d.omega_r);
}

double BasePulse::rabi(double t) const {
  const atom::Drive d = drive(t);
  if (kind_ == atom::ExcitationKind::Dipole) return d.omega;
  double oe = 0.0, de = 0.0;
  effective_coefficients(d.omega_b, d.omega_r, zchg_.delta_b, oe, de);
  return std::abs(oe) / kSqrt2;
}

double BasePulse::generalized_rabi(double t) const {
  const atom::Drive d = drive(t);
  if (kind_ == atom::ExcitationKind::Dipole) return std::hypot(d.omega, d.delta);
  double oe = 0.0, de = 0.0;
  effective_coefficients(d.omega_b, d.omega_r, zchg_.delta_b, oe, de);
  return std::hypot(oe / kSqrt2, de);
}

PulseSchedule::PulseSchedule(BasePulse base, std::vector<Segment> segments)
    : base_(std::move(base)), segs_(std::move(segments)) {
  if (segs_.empty()) throw InvalidArgument("schedule needs at least one segment");
  double t = 0.0;
  for (const auto& s : segs_) {
    if (!(s.duration > 0.0)) throw InvalidArgument("segment duration must be positive");
    if (std::abs(s.start - t) > 1e-12) throw InvalidArgument("segments must be contiguous");
    if (!std::isfinite(s.phase)) throw InvalidArgument("segment phase must be finite");
    t += s.duration;
  }
}

double PulseSchedule::total_duration() const { return segs_.back().start + segs_.back().duration; }

atom::Drive PulseSchedule::drive(std::size_t k, double local_t) const {
  const Segment& s = segs_.at(k);
  const double T = base_.duration();
  // The base pulse may be shorter than the segment only through rounding; clamp.
  double tt = std::clamp(local_t, 0.0, T);
  if (s.mirrored) tt = T - tt;
  atom::Drive d = base_.drive(tt);
  d.phase = s.phase;
  return d;
}

std::size_t PulseSchedule::segment_at(double t) const {
  for (std::size_t k = segs_.size(); k-- > 0;)
    if (t >= segs_[k].start) return k;
  return 0;
}

atom::Drive PulseSchedule::drive_at(double t) const {
  const std::size_t k = segment_at(t);
  return drive(k, t - segs_[k].start);
}

PulseSchedule build_double(const BasePulse& base, bool mirror_second) {
  const double T = base.duration();
  return PulseSchedule(base, {{0.0, T, false, 0.0}, {T, T, mirror_second, 0.0}});
}

PulseSchedule build_sequence(const BasePulse& base, double phi_r, double phi_R, bool mirror_second) {
  const double T = base.duration();
  return PulseSchedule(base, {{0.0, T, false, 0.0},
                              {T, T, mirror_second, phi_r},
                              {2 * T, T, false, phi_R},
                              {3 * T, T, mirror_second, phi_R + phi_r}});
}

PulseArea pulse_area(const PulseSchedule& s, std::size_t n) {
  if (n < 2) n = 2;
  if (n % 2) ++n;
  PulseArea a{0.0, 0.0};
  const BasePulse& b = s.base();
  for (const auto& seg : s.segments()) {
    const double h = seg.duration / static_cast<double>(n);
    double g = 0.0, r = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      double t = std::min(static_cast<double>(i) * h, b.duration());
      if (seg.mirrored) t = b.duration() - t;
      g += w * b.generalized_rabi(t);
      r += w * b.rabi(t);
    }
    a.generalized_over_2pi += g * h / 3.0 / kTwoPi;
    a.rabi_over_2pi += r * h / 3.0 / kTwoPi;
  }
  return a;
}

double peak_rabi(const BasePulse& base, std::size_t samples) {
  double m = 0.0;
  const double T = base.duration();
  for (std::size_t i = 0; i <= samples; ++i) m = std::max(m, base.peak_rabi(T * static_cast<double>(i) / samples));
  return m;
}

LcgParams with_duration(const LcgParams& p, double T) {
  LcgParams q = p;
  q.tau = p.tau / p.T * T;
  q.T = T;
  return q;
}

ZchgParams with_duration(const ZchgParams& p, double T) {
  ZchgParams q = p;
  q.tau_b = p.tau_b / p.T * T;
  q.tau_r = p.tau_r / p.T * T;
  q.T = T;
  return q;
}

void tmin_conditions(const LcgParams& p, double& population, double& peak_ratio) {
  // Effective two-level TQD pulse on {|11>, |+>}; exact 2x2 exponential at each midpoint.
  const std::size_t n = 4000;
  const double h = p.T / static_cast<double>(n);
  cplx a = 1.0, b = 0.0;
  double peak = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const TqdDipole d = tqd_dipole(p, (static_cast<double>(i) + 0.5) * h);
    const double ox = 0.5 * kSqrt2 * d.omega, oz = -0.5 * d.delta;
    const double w = std::hypot(ox, oz);
    const double c = std::cos(w * h), sn = w > 0.0 ? std::sin(w * h) / w : h;
    const cplx na = (c - kI * sn * oz) * a - kI * sn * ox * b;
    const cplx nb = -kI * sn * ox * a + (c + kI * sn * oz) * b;
    a = na;
    b = nb;
  }
  for (std::size_t i = 0; i <= 2000; ++i) peak = std::max(peak, tqd_dipole(p, p.T * static_cast<double>(i) / 2000.0).omega);
  double base = 0.0;
  for (std::size_t i = 0; i <= 2000; ++i) base = std::max(base, lcg_eval(p, p.T * static_cast<double>(i) / 2000.0).omega);
  population = std::norm(b);
  peak_ratio = peak / base;
}

TminResult min_pulse_duration(const LcgParams& p, double t_lo, double t_hi, double resolution) {
  p.validate();
  auto ok = [&](double T, double& pop, double& ratio) {
    tmin_conditions(with_duration(p, T), pop, ratio);
    return pop > 0.99 && ratio <= 1.1;
  };
  double pop = 0.0, ratio = 0.0;
  if (ok(t_lo, pop, ratio)) return {t_lo, pop, ratio};
  if (!ok(t_hi, pop, ratio)) throw InfeasibleError("no pulse duration in the search range satisfies the T_min conditions");
  double lo = t_lo, hi = t_hi;
  while (hi - lo > resolution) {
    const double mid = 0.5 * (lo + hi);
    if (ok(mid, pop, ratio))
      hi = mid;
    else
      lo = mid;
  }
  ok(hi, pop, ratio);
  return {hi, pop, ratio};
}

}  // namespace rydtqd::pulse
