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

#include "rydtqd/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace rydtqd::dynamics {

namespace {

using Deriv = std::function<void(const core::SparseMatrix&, const cplx*, cplx*)>;
using Sampler = std::function<void(double, std::size_t, const std::vector<cplx>&)>;

// Fixed-step RK4 over every segment. H is evaluated at the start, midpoint and end of each step;
// the end value is reused as the next start within a segment.
double rk4_drive(const TimeDependentHamiltonian& h, const IntegratorConfig& cfg, std::vector<cplx>& y,
                 const Deriv& f, const Sampler& sample, const std::function<void()>& post_step) {
  const std::size_t n = y.size();
  std::vector<cplx> k1(n), k2(n), k3(n), k4(n), tmp(n);
  core::SparseMatrix h0, hm, h1;
  const double bound = norm_bound(h);
  double t0 = 0.0, largest = 0.0;
  const int every = std::max(1, cfg.sample_every);
  if (sample) sample(0.0, 0, y);
  for (std::size_t s = 0; s < h.segment_durations.size(); ++s) {
    const double dur = h.segment_durations[s];
    const int steps = steps_for(dur, bound, cfg);
    const double dt = dur / steps;
    largest = std::max(largest, dt);
    h.eval(s, 0.0, h0);
    for (int k = 0; k < steps; ++k) {
      const double tl = k * dt;
      h.eval(s, tl + 0.5 * dt, hm);
      h.eval(s, k + 1 == steps ? dur : tl + dt, h1);
      f(h0, y.data(), k1.data());
      for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
      f(hm, tmp.data(), k2.data());
      for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
      f(hm, tmp.data(), k3.data());
      for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + dt * k3[i];
      f(h1, tmp.data(), k4.data());
      const double w = dt / 6.0;
      for (std::size_t i = 0; i < n; ++i) y[i] += w * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      if (post_step) post_step();
      std::swap(h0, h1);
      if (sample && ((k + 1) % every == 0 || k + 1 == steps)) sample(t0 + (k + 1 == steps ? dur : tl + dt), s, y);
    }
    t0 += dur;
  }
  return largest;
}

}  // namespace

double TimeDependentHamiltonian::total_duration() const {
  double t = 0.0;
  for (double d : segment_durations) t += d;
  return t;
}

void Trajectory::record(double t, const std::map<std::string, double>& values) {
  times.push_back(t);
  for (const auto& [k, v] : values) series[k].push_back(v);
}

int steps_for(double duration, double bound, const IntegratorConfig& cfg) {
  double h = cfg.fixed_step > 0.0 ? cfg.fixed_step : cfg.max_step;
  if (cfg.fixed_step <= 0.0 && bound > 0.0) h = std::min(h, cfg.stability / bound);
  if (!(h > 0.0)) throw InvalidArgument("integrator step must be positive");
  return std::max(1, static_cast<int>(std::ceil(duration / h - 1e-9)));
}

double norm_bound(const TimeDependentHamiltonian& h) {
  double b = 0.0;
  core::SparseMatrix m;
  for (std::size_t s = 0; s < h.segment_durations.size(); ++s)
    for (int i = 0; i <= 8; ++i) {
      h.eval(s, h.segment_durations[s] * i / 8.0, m);
      b = std::max(b, m.row_sum_norm());
    }
  return b;
}

UnitaryResult propagate_unitary(const TimeDependentHamiltonian& h, const core::StateVector& psi0,
                                const IntegratorConfig& cfg, const StateObserver& observe) {
  if (std::abs(psi0.norm() - 1.0) > 1e-9) throw InvalidArgument("initial state must be normalized");
  UnitaryResult r;
  std::vector<cplx> y = psi0.amplitudes();
  const Deriv f = [](const core::SparseMatrix& hm, const cplx* x, cplx* dx) {
    hm.apply(x, dx);
    const std::size_t n = hm.dim();
    for (std::size_t i = 0; i < n; ++i) dx[i] *= -kI;
  };
  Sampler sample;
  if (observe)
    sample = [&](double t, std::size_t, const std::vector<cplx>& v) { r.trajectory.record(t, observe(core::StateVector(v))); };
  r.trajectory.step = rk4_drive(h, cfg, y, f, sample, {});
  r.final_state = core::StateVector(std::move(y));
  const double drift = std::abs(r.final_state.norm() - 1.0);
  if (drift > 1e-5) throw NumericError("norm drift exceeds 1e-5; integrator step too large");
  return r;
}

std::vector<core::Matrix> segment_propagators(const TimeDependentHamiltonian& h, const IntegratorConfig& cfg) {
  std::vector<core::Matrix> out;
  const double bound = norm_bound(h);
  for (std::size_t s = 0; s < h.segment_durations.size(); ++s) {
    TimeDependentHamiltonian one;
    one.segment_durations = {h.segment_durations[s]};
    one.eval = [&h, s](std::size_t, double t, core::SparseMatrix& m) { h.eval(s, t, m); };
    core::SparseMatrix probe;
    h.eval(s, 0.0, probe);
    const std::size_t n = probe.dim();
    std::vector<cplx> y(n * n);
    for (std::size_t i = 0; i < n; ++i) y[i * n + i] = 1.0;
    // Columns evolve independently: dU/dt = -i H U with U stored row-major.
    const Deriv f = [n](const core::SparseMatrix& hm, const cplx* x, cplx* dx) {
      std::fill(dx, dx + n * n, cplx{});
      for (const auto& e : hm.entries()) {
        const cplx a = -kI * e.value;
        const cplx* xr = x + std::size_t(e.col) * n;
        cplx* dr = dx + std::size_t(e.row) * n;
        for (std::size_t j = 0; j < n; ++j) dr[j] += a * xr[j];
      }
    };
    IntegratorConfig c = cfg;
    if (c.fixed_step <= 0.0) {
      // Keep the step rule of the full schedule so that segments match a whole-schedule run.
      c.fixed_step = std::min(cfg.max_step, bound > 0.0 ? cfg.stability / bound : cfg.max_step);
    }
    rk4_drive(one, c, y, f, {}, {});
    out.emplace_back(n, n, std::move(y));
  }
  return out;
}

GkslResult propagate_gksl(const TimeDependentHamiltonian& h, const std::vector<core::Matrix>& collapse,
                          const core::Matrix& rho0, const IntegratorConfig& config, const DensityObserver& observe,
                          int positivity_every) {
  IntegratorConfig cfg = config;
  cfg.stability = config.density_stability;
  const std::size_t n = rho0.rows();
  if (!rho0.square()) throw InvalidArgument("rho0 must be square");
  if (std::abs(rho0.trace() - 1.0) > 1e-9) throw InvalidArgument("rho0 must have unit trace");
  // Jump terms in sparse form and the real diagonal of sum c^+ c.
  std::vector<core::SparseMatrix> jumps;
  core::Matrix damping(n, n);
  for (const auto& c : collapse) {
    if (c.rows() != n) throw InvalidArgument("collapse operator dimension mismatch");
    jumps.push_back(core::SparseMatrix::from_dense(c));
    damping += c.adjoint() * c;
  }
  const core::SparseMatrix damp = core::SparseMatrix::from_dense(damping);

  GkslResult r;
  std::vector<cplx> y(rho0.entries());
  core::SparseMatrix g;
  std::vector<cplx> m(n * n);
  // L(rho) = -i (G rho - (G rho)^+) + sum c rho c^+,  G = H - (i/2) sum c^+ c, rho Hermitian.
  const Deriv f = [&](const core::SparseMatrix& hm, const cplx* x, cplx* dx) {
    std::fill(m.begin(), m.end(), cplx{});
    for (const auto& e : hm.entries()) {
      const cplx* xr = x + std::size_t(e.col) * n;
      cplx* mr = m.data() + std::size_t(e.row) * n;
      for (std::size_t j = 0; j < n; ++j) mr[j] += e.value * xr[j];
    }
    for (const auto& e : damp.entries()) {
      const cplx a = -0.5 * kI * e.value;
      const cplx* xr = x + std::size_t(e.col) * n;
      cplx* mr = m.data() + std::size_t(e.row) * n;
      for (std::size_t j = 0; j < n; ++j) mr[j] += a * xr[j];
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) dx[i * n + j] = -kI * (m[i * n + j] - std::conj(m[j * n + i]));
    for (const auto& c : jumps)
      for (const auto& a : c.entries())
        for (const auto& b : c.entries()) dx[std::size_t(a.row) * n + b.row] += a.value * std::conj(b.value) * x[std::size_t(a.col) * n + b.col];
  };
  int counter = 0;
  const auto post = [&]() {
    for (std::size_t i = 0; i < n; ++i) {
      y[i * n + i] = y[i * n + i].real();
      for (std::size_t j = i + 1; j < n; ++j) {
        const cplx avg = 0.5 * (y[i * n + j] + std::conj(y[j * n + i]));
        r.max_hermiticity_error = std::max(r.max_hermiticity_error, std::abs(y[i * n + j] - std::conj(y[j * n + i])));
        y[i * n + j] = avg;
        y[j * n + i] = std::conj(avg);
      }
    }
    cplx tr = 0.0;
    for (std::size_t i = 0; i < n; ++i) tr += y[i * n + i];
    r.max_trace_error = std::max(r.max_trace_error, std::abs(tr - 1.0));
    if (r.max_trace_error > 1e-5) throw NumericError("GKSL trace drift exceeds 1e-5");
    if (positivity_every > 0 && ++counter % positivity_every == 0) {
      if (!core::positive_semidefinite(core::Matrix(n, n, y), 1e-6)) {
        r.positivity_ok = false;
        throw NumericError("GKSL state has an eigenvalue below -1e-6");
      }
    }
  };
  Sampler sample;
  if (observe)
    sample = [&](double t, std::size_t, const std::vector<cplx>& v) { r.trajectory.record(t, observe(core::Matrix(n, n, v))); };
  r.trajectory.step = rk4_drive(h, cfg, y, f, sample, post);
  r.final_rho = core::Matrix(n, n, std::move(y));
  if (!core::positive_semidefinite(r.final_rho, 1e-6)) {
    r.positivity_ok = false;
    throw NumericError("GKSL final state has an eigenvalue below -1e-6");
  }
  return r;
}

SectorTrajectory propagate_sector(const std::vector<double>& durations,
                                  const std::function<core::Matrix(std::size_t, double)>& h2,
                                  const core::StateVector& psi0, const IntegratorConfig& cfg) {
  if (psi0.dim() != 2) throw InvalidArgument("sector state must be two-dimensional");
  TimeDependentHamiltonian h;
  h.segment_durations = durations;
  h.eval = [&h2](std::size_t s, double t, core::SparseMatrix& m) { m = core::SparseMatrix::from_dense(h2(s, t)); };
  SectorTrajectory out;
  std::vector<cplx> y = psi0.amplitudes();
  const Deriv f = [](const core::SparseMatrix& hm, const cplx* x, cplx* dx) {
    hm.apply(x, dx);
    dx[0] *= -kI;
    dx[1] *= -kI;
  };
  const Sampler sample = [&](double t, std::size_t s, const std::vector<cplx>& v) {
    // The sample taken at a segment's end belongs to that segment.
    out.times.push_back(t);
    out.states.emplace_back(v);
    out.segment.push_back(s);
  };
  rk4_drive(h, cfg, y, f, sample, {});
  return out;
}

double adiabaticity_monitor(const SectorTrajectory& traj,
                            const std::function<core::Matrix(std::size_t, double)>& h2_of_t,
                            const std::vector<double>& segment_starts) {
  double worst = 1.0;
  std::size_t current = static_cast<std::size_t>(-1);
  core::StateVector followed;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const std::size_t s = traj.segment[i];
    const double local = traj.times[i] - segment_starts.at(s);
    const core::Eigensystem2 es = core::eigensystem_2x2(h2_of_t(s, std::max(0.0, local)));
    const core::StateVector& psi = traj.states[i];
    int pick = 0;
    if (s != current) {
      // New segment: follow the eigenstate the system currently occupies.
      pick = std::norm(es.vectors[1].inner(psi)) > std::norm(es.vectors[0].inner(psi)) ? 1 : 0;
      current = s;
    } else {
      pick = std::norm(es.vectors[1].inner(followed)) > std::norm(es.vectors[0].inner(followed)) ? 1 : 0;
    }
    followed = es.vectors[pick];
    worst = std::min(worst, std::norm(followed.inner(psi)));
  }
  return worst;
}

std::vector<double> accumulated_phase(const std::vector<cplx>& amps, std::vector<std::size_t>* skipped) {
  std::vector<double> out(amps.size(), 0.0);
  bool have = false;
  double last = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (std::abs(amps[i]) < 1e-6) {
      if (skipped) skipped->push_back(i);
      out[i] = last;
      continue;
    }
    double a = std::arg(amps[i]);
    if (have) {
      a += kTwoPi * std::round((last - a) / kTwoPi);
    }
    out[i] = a;
    last = a;
    have = true;
  }
  return out;
}

std::vector<double> accumulated_phase(const Trajectory& traj, const std::string& label, std::vector<std::size_t>* skipped) {
  const auto re = traj.series.find("re_" + label), im = traj.series.find("im_" + label);
  if (re == traj.series.end() || im == traj.series.end()) throw InvalidArgument("trajectory lacks amplitude series for " + label);
  std::vector<cplx> amps(re->second.size());
  for (std::size_t i = 0; i < amps.size(); ++i) amps[i] = {re->second[i], im->second[i]};
  return accumulated_phase(amps, skipped);
}

}  // namespace rydtqd::dynamics
