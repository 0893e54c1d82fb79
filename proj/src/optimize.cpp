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


#include "rydtqd/optimize.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "rydtqd/parallel.hpp"

namespace rydtqd::optimize {

double feasibility_threshold(atom::ExcitationKind kind) {
  return kind == atom::ExcitationKind::Dipole ? 0.9989 : 0.989;
}

bool feasible(double f0, atom::ExcitationKind kind) { return f0 > feasibility_threshold(kind); }

void SearchDomain::validate() const {
  if (bounds.empty()) throw InvalidArgument("search domain is empty");
  for (const auto& [lo, hi] : bounds)
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) throw InvalidArgument("domain bounds need lower < upper");
}

SearchDomain lcg_domain() {
  return {{{0.1, 0.25}, {kTwoPi * 10.0, kTwoPi * 25.0}, {kTwoPi * 20.0, kTwoPi * 50.0}, {0.2, 0.3}},
          {"T", "Omega0", "Delta0", "tau_over_T"}};
}

SearchDomain zchg_domain() {
  return {{{0.1, 5.0},
           {kTwoPi * 50.0, kTwoPi * 300.0},
           {kTwoPi * 50.0, kTwoPi * 300.0},
           {kTwoPi * 100.0, kTwoPi * 3000.0},
           {0.25, 0.35},
           {0.25, 0.35}},
          {"T", "OmegaB0", "OmegaR0", "DeltaB_abs", "tauB_over_T", "tauR_over_T"}};
}

void DeConfig::validate() const {
  if (population != 0 && population < 4) throw InvalidArgument("DE population must be at least 4");
  if (max_generations < 0) throw InvalidArgument("DE generations must be non-negative");
  if (!(differential_weight > 0.0 && differential_weight < 2.0)) throw InvalidArgument("DE weight must lie in (0,2)");
  if (!(crossover_rate > 0.0 && crossover_rate < 1.0)) throw InvalidArgument("DE crossover must lie in (0,1)");
}

DeResult differential_evolution(const std::function<double(const std::vector<double>&)>& objective,
                                const SearchDomain& domain, const DeConfig& cfg,
                                const std::function<bool(double)>& stop) {
  domain.validate();
  cfg.validate();
  const std::size_t dim = domain.dim();
  const std::size_t np = cfg.population ? cfg.population : 15 * dim;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  std::vector<std::vector<double>> pop(np, std::vector<double>(dim));
  for (auto& x : pop)
    for (std::size_t d = 0; d < dim; ++d) x[d] = domain.bounds[d].first + u01(rng) * (domain.bounds[d].second - domain.bounds[d].first);
  std::vector<double> val(np);
  parallel_for(np, cfg.workers, [&](std::size_t i) { val[i] = objective(pop[i]); });

  DeResult r;
  r.evaluations = np;
  auto best_index = [&] { return std::size_t(std::min_element(val.begin(), val.end()) - val.begin()); };
  std::size_t best = best_index();
  if (stop && stop(val[best])) r.stopped_early = true;

  std::uniform_int_distribution<std::size_t> pick(0, np - 1);
  std::uniform_int_distribution<std::size_t> pick_dim(0, dim - 1);
  std::vector<std::vector<double>> trial(np, std::vector<double>(dim));
  std::vector<double> trial_val(np);
  while (!r.stopped_early && r.generations < cfg.max_generations) {
    for (std::size_t i = 0; i < np; ++i) {
      std::size_t a, b, c;
      do a = pick(rng); while (a == i);
      do b = pick(rng); while (b == i || b == a);
      do c = pick(rng); while (c == i || c == a || c == b);
      const std::size_t jrand = pick_dim(rng);
      for (std::size_t d = 0; d < dim; ++d) {
        const bool cross = d == jrand || u01(rng) < cfg.crossover_rate;
        double v = cross ? pop[a][d] + cfg.differential_weight * (pop[b][d] - pop[c][d]) : pop[i][d];
        trial[i][d] = std::clamp(v, domain.bounds[d].first, domain.bounds[d].second);
      }
    }
    parallel_for(np, cfg.workers, [&](std::size_t i) { trial_val[i] = objective(trial[i]); });
    r.evaluations += np;
    for (std::size_t i = 0; i < np; ++i)
      if (trial_val[i] <= val[i]) {
        pop[i] = trial[i];
        val[i] = trial_val[i];
      }
    ++r.generations;
    best = best_index();
    if (stop && stop(val[best])) r.stopped_early = true;
  }
  r.x = pop[best];
  r.value = val[best];
  return r;
}

pulse::LcgParams lcg_from_vector(const std::vector<double>& x) {
  if (x.size() != 4) throw InvalidArgument("LCG vector needs 4 entries");
  return {x[0], x[1], x[3] * x[0], x[2]};
}

pulse::ZchgParams zchg_from_vector(const std::vector<double>& x, double delta_b_sign) {
  if (x.size() != 6) throw InvalidArgument("ZCHG vector needs 6 entries");
  return {x[0], x[1], x[2], x[4] * x[0], x[5] * x[0], (delta_b_sign < 0.0 ? -1.0 : 1.0) * x[3]};
}

double adiabatic_f0(const atom::AtomModel& model, const pulse::BasePulse& base, const dynamics::IntegratorConfig& cfg,
                    bool mirror_second) {
  return gate::run_unitary(model, pulse::build_double(base, mirror_second), cfg, false).f0;
}

PulseSearchResult search_pulse(const atom::AtomModel& model, const DeConfig& de, const dynamics::IntegratorConfig& cfg) {
  const bool dipole = model.excitation == atom::ExcitationKind::Dipole;
  const SearchDomain domain = dipole ? lcg_domain() : zchg_domain();
  auto base_of = [&](const std::vector<double>& x) {
    return dipole ? pulse::BasePulse::lcg(lcg_from_vector(x), pulse::Family::Adiabatic)
                  : pulse::BasePulse::zchg(zchg_from_vector(x), pulse::Family::Adiabatic);
  };
  auto objective = [&](const std::vector<double>& x) {
    try {
      return -adiabatic_f0(model, base_of(x), cfg);
    } catch (const NumericError&) {
      return 0.0;
    }
  };
  const double eta = feasibility_threshold(model.excitation);
  PulseSearchResult r;
  r.de = differential_evolution(objective, domain, de, [eta](double v) { return -v > eta; });
  r.f0 = -r.de.value;
  r.feasible = feasible(r.f0, model.excitation);
  if (dipole)
    r.lcg = lcg_from_vector(r.de.x);
  else
    r.zchg = zchg_from_vector(r.de.x);
  return r;
}

PhaseSearchResult find_phase_shifts(const gate::PhaseComposer& composer, double resolution, bool refine) {
  if (composer.segments() != 4) throw InvalidArgument("phase search needs a four-segment sequence");
  if (!(resolution > 0.0)) throw InvalidArgument("phase resolution must be positive");
  const int n = std::max(1, int(std::lround(kTwoPi / resolution)));
  const double h = kTwoPi / n;
  PhaseSearchResult r;
  double lo = std::numeric_limits<double>::infinity();
  r.f0 = -lo;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double f = composer.f0(gate::sequence_phases(i * h, j * h));
      ++r.evaluations;
      lo = std::min(lo, f);
      if (f > r.f0) {
        r.f0 = f;
        r.phi_r = i * h;
        r.phi_R = j * h;
      }
    }
  if (r.f0 - lo < 1e-12) {
    r.flat = true;
    r.phi_r = r.phi_R = 0.0;
    return r;
  }
  if (!refine) return r;
  const auto wrap = [](double a) { return a - kTwoPi * std::floor(a / kTwoPi); };
  for (double step = h / 2; step > 1e-7; step /= 2) {
    bool moved = true;
    while (moved) {
      moved = false;
      const double dirs[4][2] = {{step, 0}, {-step, 0}, {0, step}, {0, -step}};
      for (const auto& d : dirs) {
        const double pr = wrap(r.phi_r + d[0]), pR = wrap(r.phi_R + d[1]);
        const double f = composer.f0(gate::sequence_phases(pr, pR));
        ++r.evaluations;
        if (f > r.f0 + 1e-15) {
          r.f0 = f;
          r.phi_r = pr;
          r.phi_R = pR;
          moved = true;
        }
      }
    }
  }
  return r;
}

namespace {

pulse::LcgParams iso_shape(const IsoConfig& iso, double T, double omega0) {
  pulse::LcgParams p = pulse::with_duration(iso.shape, T);
  p.omega0 = omega0;
  return p;
}

struct Probe {
  double f0, omega_max, phi_r, phi_R;
};

Probe probe(const atom::AtomModel& model, pulse::Family family, double t_gate, double omega0, const IsoConfig& iso,
            const dynamics::IntegratorConfig& cfg) {
  if (family == pulse::Family::Adiabatic) {
    const auto base = pulse::BasePulse::lcg(iso_shape(iso, t_gate / 2, omega0), family);
    return {adiabatic_f0(model, base, cfg), omega0, 0.0, 0.0};
  }
  const auto base = pulse::BasePulse::lcg(iso_shape(iso, t_gate / 4, omega0), family);
  const gate::PhaseComposer composer(model, pulse::build_sequence(base, 0.0, 0.0, false), cfg);
  const PhaseSearchResult ph = find_phase_shifts(composer, iso.phase_resolution, true);
  return {ph.f0, pulse::peak_rabi(base), ph.phi_r, ph.phi_R};
}

}  // namespace

IsoPoint min_omega_search(const atom::AtomModel& model, pulse::Family family, double t_gate, const IsoConfig& iso,
                          const dynamics::IntegratorConfig& cfg) {
  if (model.excitation != atom::ExcitationKind::Dipole) throw InvalidArgument("iso-fidelity scans use dipole driving");
  if (!(t_gate > 0.0)) throw InvalidArgument("gate time must be positive");
  if (!(iso.omega0_lo > 0.0 && iso.omega0_hi > iso.omega0_lo && iso.omega0_step > 0.0))
    throw InvalidArgument("invalid amplitude grid");
  std::vector<double> grid;
  for (double w = iso.omega0_lo; w <= iso.omega0_hi * (1 + 1e-12); w += iso.omega0_step) grid.push_back(w);

  // Candidate order: ascending peak Rabi frequency of the synthesized waveform.
  std::vector<double> peak(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k)
    peak[k] = family == pulse::Family::Adiabatic
                  ? grid[k]
                  : pulse::peak_rabi(pulse::BasePulse::lcg(iso_shape(iso, t_gate / 4, grid[k]), family));
  std::vector<std::size_t> order(grid.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return peak[a] < peak[b]; });

  std::vector<bool> tried(grid.size(), false);
  for (std::size_t k : order) {
    tried[k] = true;
    Probe hit = probe(model, family, t_gate, grid[k], iso, cfg);
    if (!(hit.f0 > iso.target)) continue;
    // Bisect toward the grid neighbor with the smaller peak, which has already failed.
    double good = grid[k];
    std::optional<std::size_t> bad_index;
    for (std::size_t nb : {k - 1, k + 1})
      if (nb < grid.size() && tried[nb] && peak[nb] < peak[k] && (!bad_index || peak[nb] < peak[*bad_index]))
        bad_index = nb;
    if (bad_index) {
      double bad = grid[*bad_index];
      while (std::abs(good - bad) > iso.refine_tol) {
        const double mid = 0.5 * (good + bad);
        const Probe m = probe(model, family, t_gate, mid, iso, cfg);
        if (m.f0 > iso.target && m.omega_max <= hit.omega_max) {
          good = mid;
          hit = m;
        } else {
          bad = mid;
        }
      }
    } else if (family == pulse::Family::Ctqd) {
      // Feasible at a grid minimum of the peak: locate the minimum between the neighbors.
      const double lo = k > 0 ? grid[k - 1] : grid[k];
      const double hi = k + 1 < grid.size() ? grid[k + 1] : grid[k];
      const auto peak_at = [&](double w) {
        return pulse::peak_rabi(pulse::BasePulse::lcg(iso_shape(iso, t_gate / 4, w), family));
      };
      const double g = (std::sqrt(5.0) - 1.0) / 2.0;
      double a = lo, b = hi, c = b - g * (b - a), d = a + g * (b - a);
      double pc = peak_at(c), pd = peak_at(d);
      while (b - a > iso.refine_tol) {
        if (pc < pd) {
          b = d, d = c, pd = pc, c = b - g * (b - a), pc = peak_at(c);
        } else {
          a = c, c = d, pc = pd, d = a + g * (b - a), pd = peak_at(d);
        }
      }
      const double w = 0.5 * (a + b);
      const Probe m = probe(model, family, t_gate, w, iso, cfg);
      if (m.f0 > iso.target && m.omega_max < hit.omega_max) {
        good = w;
        hit = m;
      }
    }
    IsoPoint p;
    p.t_gate = t_gate;
    p.omega0 = good;
    p.omega_max = hit.omega_max;
    p.f0 = hit.f0;
    p.phi_r = hit.phi_r;
    p.phi_R = hit.phi_R;
    p.reachable = true;
    return p;
  }
  throw InfeasibleError("target fidelity unreachable within the amplitude bounds at T_g = " + std::to_string(t_gate));
}

std::vector<IsoPoint> iso_fidelity_scan(const atom::AtomModel& model, pulse::Family family,
                                        const std::vector<double>& t_gates, const IsoConfig& iso,
                                        const dynamics::IntegratorConfig& cfg, int workers) {
  std::vector<IsoPoint> out(t_gates.size());
  parallel_for(t_gates.size(), workers, [&](std::size_t i) {
    try {
      out[i] = min_omega_search(model, family, t_gates[i], iso, cfg);
    } catch (const InfeasibleError&) {
      out[i].t_gate = t_gates[i];
      out[i].reachable = false;
    }
  });
  return out;
}

std::optional<double> invert_iso_curve(const std::vector<IsoPoint>& curve, double omega_max) {
  std::vector<IsoPoint> c(curve);
  std::sort(c.begin(), c.end(), [](const IsoPoint& a, const IsoPoint& b) { return a.t_gate < b.t_gate; });
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (!c[k].reachable || c[k].omega_max > omega_max) continue;
    if (k == 0 || !c[k - 1].reachable) return c[k].t_gate;
    const IsoPoint& a = c[k - 1];
    const IsoPoint& b = c[k];
    const double s = (a.omega_max - omega_max) / (a.omega_max - b.omega_max);
    return a.t_gate + s * (b.t_gate - a.t_gate);
  }
  return std::nullopt;
}

std::vector<SpeedupPoint> speedup_scan(const std::vector<IsoPoint>& arp, const std::vector<IsoPoint>& ctqd,
                                       const std::vector<double>& omega_bar) {
  std::vector<SpeedupPoint> out;
  for (double w : omega_bar) {
    const auto ta = invert_iso_curve(arp, kTwoPi * w);
    const auto tc = invert_iso_curve(ctqd, kTwoPi * w);
    if (!ta || !tc) continue;
    out.push_back({w, *ta, *tc, *ta / *tc});
  }
  return out;
}

double power_law(double t, double nu1, double nu2, double p) { return nu1 * std::pow(t, -p) + nu2; }

double logistic(double x, double a, double b, double c, double d) { return a / (1.0 + std::exp(-b * x + c)) + d; }

double r_squared(const std::vector<double>& y, const std::vector<double>& fitted) {
  if (y.size() != fitted.size() || y.empty()) throw InvalidArgument("r_squared needs matching non-empty inputs");
  const double mean = std::accumulate(y.begin(), y.end(), 0.0) / double(y.size());
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    ss_res += (y[i] - fitted[i]) * (y[i] - fitted[i]);
    ss_tot += (y[i] - mean) * (y[i] - mean);
  }
  return ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : (ss_res == 0.0 ? 1.0 : 0.0);
}

FitResult levenberg_marquardt(const LmProblem& problem, const std::vector<double>& x, const std::vector<double>& y,
                              std::vector<double> start, int max_iterations) {
  const std::size_t n = x.size(), k = start.size();
  if (y.size() != n) throw InvalidArgument("fit data sizes differ");
  if (n <= k) throw InvalidArgument("fit needs more points than parameters");
  using Mat = Eigen::MatrixXd;
  using Vec = Eigen::VectorXd;
  auto residuals = [&](const std::vector<double>& q, Vec& r) {
    r.resize(Eigen::Index(n));
    for (std::size_t i = 0; i < n; ++i) r[Eigen::Index(i)] = y[i] - problem.f(x[i], q);
    return r.allFinite() ? r.squaredNorm() : std::numeric_limits<double>::infinity();
  };
  auto jacobian = [&](const std::vector<double>& q) {
    Mat J(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
    for (std::size_t i = 0; i < n; ++i) {
      const auto g = problem.grad(x[i], q);
      for (std::size_t j = 0; j < k; ++j) J(Eigen::Index(i), Eigen::Index(j)) = g[j];
    }
    return J;
  };
  FitResult out;
  Vec r;
  double ssr = residuals(start, r);
  if (!std::isfinite(ssr)) throw NumericError("fit start point gives non-finite residuals");
  double lambda = 1e-3;
  std::vector<double> q = start;
  for (int it = 0; it < max_iterations; ++it) {
    out.iterations = it + 1;
    const Mat J = jacobian(q);
    const Mat A = J.transpose() * J;
    const Vec g = J.transpose() * r;
    bool improved = false;
    while (lambda < 1e12) {
      Mat D = A;
      for (Eigen::Index j = 0; j < D.rows(); ++j) D(j, j) += lambda * std::max(A(j, j), 1e-12);
      const Vec step = D.ldlt().solve(g);
      std::vector<double> trial(q);
      for (std::size_t j = 0; j < k; ++j) trial[j] += step[Eigen::Index(j)];
      Vec rt;
      const double st = residuals(trial, rt);
      if (st < ssr) {
        const double rel = (ssr - st) / std::max(ssr, 1e-300);
        const double step_rel = step.norm() / (1e-12 + Eigen::Map<const Vec>(q.data(), Eigen::Index(k)).norm());
        q = trial;
        r = rt;
        ssr = st;
        lambda = std::max(lambda / 10.0, 1e-12);
        improved = true;
        if (rel < 1e-14 || step_rel < 1e-12) out.converged = true;
        break;
      }
      lambda *= 10.0;
    }
    if (!improved) {
      out.converged = true;  // no descent direction left at any damping
      break;
    }
    if (out.converged) break;
  }
  const Mat J = jacobian(q);
  const Mat cov = (J.transpose() * J).completeOrthogonalDecomposition().pseudoInverse() * (ssr / double(n - k));
  out.params = q;
  out.sigmas.resize(k);
  for (std::size_t j = 0; j < k; ++j) out.sigmas[j] = std::sqrt(std::max(0.0, cov(Eigen::Index(j), Eigen::Index(j))));
  std::vector<double> fitted(n);
  for (std::size_t i = 0; i < n; ++i) fitted[i] = problem.f(x[i], q);
  out.r_squared = r_squared(y, fitted);
  out.ss_res = ssr;
  return out;
}

FitResult fit_power_law(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() < 4 || x.size() != y.size()) throw InvalidArgument("power-law fit needs at least 4 points");
  for (double v : x)
    if (!(v > 0.0)) throw InvalidArgument("power-law abscissae must be positive");
  LmProblem pr;
  pr.f = [](double t, const std::vector<double>& q) { return power_law(t, q[0], q[1], q[2]); };
  pr.grad = [](double t, const std::vector<double>& q) {
    const double tp = std::pow(t, -q[2]);
    return std::vector<double>{tp, 1.0, -q[0] * tp * std::log(t)};
  };
  const double ymin = *std::min_element(y.begin(), y.end());
  std::optional<FitResult> best;
  for (double frac : {0.0, 0.5, 0.8, 0.95}) {
    // Offset guess, then slope and intercept of log(y - nu2) against log(t).
    const double nu2 = frac * ymin;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t m = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!(y[i] - nu2 > 0.0)) continue;
      const double lx = std::log(x[i]), ly = std::log(y[i] - nu2);
      sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly, ++m;
    }
    if (m < 2 || sxx * double(m) - sx * sx <= 0.0) continue;
    const double slope = (double(m) * sxy - sx * sy) / (double(m) * sxx - sx * sx);
    const double icpt = (sy - slope * sx) / double(m);
    try {
      FitResult f = levenberg_marquardt(pr, x, y, {std::exp(icpt), nu2, -slope});
      if (!best || f.ss_res < best->ss_res) best = f;
    } catch (const NumericError&) {
    }
  }
  if (!best) throw NumericError("power-law fit did not converge");
  best->model = "power";
  best->names = {"nu1", "nu2", "p"};
  return *best;
}

FitResult fit_logistic(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() < 5 || x.size() != y.size()) throw InvalidArgument("logistic fit needs at least 5 points");
  LmProblem pr;
  pr.f = [](double v, const std::vector<double>& q) { return logistic(v, q[0], q[1], q[2], q[3]); };
  pr.grad = [](double v, const std::vector<double>& q) {
    const double e = std::exp(-q[1] * v + q[2]);
    const double s = 1.0 / (1.0 + e);
    const double ds = q[0] * e * s * s;  // d/d(-b v + c) of a s, with sign folded below
    return std::vector<double>{s, ds * v, -ds, 1.0};
  };
  const auto [ylo, yhi] = std::minmax_element(y.begin(), y.end());
  const auto [xlo, xhi] = std::minmax_element(x.begin(), x.end());
  const double mid = 0.5 * (*ylo + *yhi);
  double xmid = 0.5 * (*xlo + *xhi);
  for (std::size_t i = 0; i + 1 < x.size(); ++i)
    if ((y[i] - mid) * (y[i + 1] - mid) <= 0.0 && y[i] != y[i + 1]) {
      xmid = x[i] + (mid - y[i]) * (x[i + 1] - x[i]) / (y[i + 1] - y[i]);
      break;
    }
  const double span = std::max(*xhi - *xlo, 1e-12);
  std::optional<FitResult> best;
  for (double bs : {1.0, 4.0, 10.0, 30.0}) {
    const double b = bs / span;
    try {
      FitResult f = levenberg_marquardt(pr, x, y, {*yhi - *ylo, b, b * xmid, *ylo});
      if (!best || f.ss_res < best->ss_res) best = f;
    } catch (const NumericError&) {
    }
  }
  if (!best) throw NumericError("logistic fit did not converge");
  best->model = "logistic";
  best->names = {"a", "b", "c", "d"};
  return *best;
}

}  // namespace rydtqd::optimize
