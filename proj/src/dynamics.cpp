// Copyright 2026 The cubicplan Authors
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

#include "cubicplan/dynamics.hpp"

#include <cmath>
#include <string>

#include "cubicplan/fields.hpp"
#include "flow.hpp"

namespace cubicplan
{

SampledCurve Trajectory::sampled(const ManifoldChart & chart) const
{
  SampledCurve c;
  c.t0 = start_time();
  c.step = step;
  for (const auto & s : states) {
    c.position.push_back(s.q);
    c.velocity.push_back(s.v);
    c.acceleration.push_back(s.a - contract_christoffel(chart.christoffel(s.q), s.v, s.v));
  }
  return c;
}

StateDerivative ode_rhs(
  const ManifoldChart & chart, const Potential & potential, const CurveState & state)
{
  const detail::AugmentedFlow flow(chart, potential, 0, 0);
  const Vec d = flow.rhs(flow.pack(state));
  const int n = chart.dim();
  return {d.segment(0, n), d.segment(n, n), d.segment(2 * n, n), d.segment(3 * n, n)};
}

Trajectory integrate_steps(
  const ManifoldChart & chart, const Potential & potential, const CurveState & initial,
  double T, int steps)
{
  if (!(T > 0.0) || steps < 1) {throw ContractError("integrate: need T > 0 and steps >= 1");}
  const int n = chart.dim();
  if (initial.q.size() != n || initial.v.size() != n || initial.a.size() != n ||
    initial.j.size() != n)
  {
    throw ContractError("integrate: state has the wrong dimension");
  }
  chart.require_inside(initial.q, "initial state");
  const detail::AugmentedFlow flow(chart, potential, 0, 0);
  const double h = T / steps;
  Trajectory traj;
  traj.step = h;
  traj.chart_id = chart.id();
  traj.potential_id = potential.id();
  traj.states.reserve(steps + 1);
  Vec y = flow.pack(initial);
  traj.states.push_back(flow.unpack(y, initial.t));
  for (int i = 0; i < steps; ++i) {
    const double t = initial.t + i * h;
    flow.step(y, t, h);
    traj.states.push_back(flow.unpack(y, initial.t + (i + 1) * h));
  }
  return traj;
}

Trajectory integrate_ivp(
  const ManifoldChart & chart, const Potential & potential, const CurveState & initial,
  double T, double h)
{
  if (!(h > 0.0) || !(T > 0.0)) {throw ContractError("integrate_ivp: need T > 0 and h > 0");}
  const int steps = std::max(1, static_cast<int>(std::ceil(T / h - 1e-9)));
  return integrate_steps(chart, potential, initial, T, steps);
}

double simpson(const std::vector<double> & f, double h)
{
  const std::size_t m = f.size();
  if (m < 2) {return 0.0;}
  if (m == 2) {return 0.5 * h * (f[0] + f[1]);}
  const std::size_t intervals = m - 1;
  std::size_t even_end = intervals % 2 == 0 ? intervals : intervals - 3;
  double s = 0.0;
  if (even_end > 0) {
    double acc = f[0] + f[even_end];
    for (std::size_t i = 1; i < even_end; ++i) {acc += (i % 2 == 1 ? 4.0 : 2.0) * f[i];}
    s += acc * h / 3.0;
  }
  if (even_end != intervals) {
    const std::size_t k = even_end;
    s += 3.0 * h / 8.0 * (f[k] + 3.0 * f[k + 1] + 3.0 * f[k + 2] + f[k + 3]);
  }
  return s;
}

double action(const ManifoldChart & chart, const Potential & potential, const Trajectory & traj)
{
  std::vector<double> f;
  f.reserve(traj.size());
  for (const auto & s : traj.states) {
    const double a2 = s.a.dot(chart.metric(s.q) * s.a);
    f.push_back(0.5 * a2 + (potential.is_zero() ? 0.0 : potential.value(s.q)));
  }
  return simpson(f, traj.step);
}

namespace
{

// Fourth-order derivative stencils on uniform samples.
void differentiate(
  const std::vector<Vec> & p, double h, std::vector<Vec> & vel, std::vector<Vec> & acc)
{
  const int m = static_cast<int>(p.size());
  if (m < 6) {throw ContractError("sampled curve needs at least 6 samples");}
  vel.assign(m, Vec());
  acc.assign(m, Vec());
  for (int i = 2; i < m - 2; ++i) {
    vel[i] = (-p[i + 2] + 8.0 * p[i + 1] - 8.0 * p[i - 1] + p[i - 2]) / (12.0 * h);
    acc[i] = (-p[i + 2] + 16.0 * p[i + 1] - 30.0 * p[i] + 16.0 * p[i - 1] - p[i - 2]) /
      (12.0 * h * h);
  }
  auto ends = [&](auto at, double sign, int i0, int i1) {
      vel[i0] = sign * (-25.0 * at(0) + 48.0 * at(1) - 36.0 * at(2) + 16.0 * at(3) - 3.0 * at(4)) /
        (12.0 * h);
      vel[i1] = sign * (-3.0 * at(0) - 10.0 * at(1) + 18.0 * at(2) - 6.0 * at(3) + at(4)) /
        (12.0 * h);
      acc[i0] = (45.0 * at(0) - 154.0 * at(1) + 214.0 * at(2) - 156.0 * at(3) + 61.0 * at(4) -
        10.0 * at(5)) / (12.0 * h * h);
      acc[i1] = (10.0 * at(0) - 15.0 * at(1) - 4.0 * at(2) + 14.0 * at(3) - 6.0 * at(4) +
        at(5)) / (12.0 * h * h);
    };
  ends([&](int k) -> const Vec & {return p[k];}, 1.0, 0, 1);
  ends([&](int k) -> const Vec & {return p[m - 1 - k];}, -1.0, m - 1, m - 2);
}

}  // namespace

double sampled_action(
  const ManifoldChart & chart, const Potential & potential, const std::vector<Vec> & points,
  double step)
{
  std::vector<Vec> vel, acc;
  differentiate(points, step, vel, acc);
  std::vector<double> f(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Vec & q = points[i];
    const Vec a = acc[i] + contract_christoffel(chart.christoffel(q), vel[i], vel[i]);
    f[i] = 0.5 * a.dot(chart.metric(q) * a) + (potential.is_zero() ? 0.0 : potential.value(q));
  }
  return simpson(f, step);
}

double varied_action(
  const ManifoldChart & chart, const Potential & potential, const Trajectory & traj,
  const std::vector<Vec> & W)
{
  if (W.size() != traj.size()) {throw ContractError("variation field grid mismatch");}
  std::vector<Vec> pts(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    pts[i] = W[i].squaredNorm() == 0.0 ? traj.states[i].q : exp_map(chart, traj.states[i].q, W[i]);
  }
  return sampled_action(chart, potential, pts, traj.step);
}

double first_variation(
  const ManifoldChart & chart, const Potential & potential, const Trajectory & traj,
  const AdmissibleField & W)
{
  const auto & X = W.samples().X;
  if (X.size() != traj.size()) {throw ContractError("variation field grid mismatch");}
  double sup = 0.0;
  for (std::size_t i = 0; i < X.size(); ++i) {
    sup = std::max(sup, norm(chart, traj.states[i].q, X[i]));
  }
  if (sup == 0.0) {return 0.0;}
  const double eps = 1e-5 / sup;
  std::vector<Vec> plus(X.size()), minus(X.size());
  for (std::size_t i = 0; i < X.size(); ++i) {
    plus[i] = eps * X[i];
    minus[i] = -eps * X[i];
  }
  return (varied_action(chart, potential, traj, plus) -
         varied_action(chart, potential, traj, minus)) / (2.0 * eps);
}

std::vector<Vec> cubic_residual(
  const ManifoldChart & chart, const Potential & potential, const Trajectory & traj)
{
  std::vector<Vec> js(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) {js[i] = traj.states[i].j;}
  std::vector<Vec> djs, unused;
  differentiate(js, traj.step, djs, unused);
  std::vector<Vec> res(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const auto & s = traj.states[i];
    Vec r = djs[i] + contract_christoffel(chart.christoffel(s.q), s.v, s.j) +
      contract_riemann(chart.riemann(s.q), s.a, s.v, s.v);
    if (!potential.is_zero()) {r += potential.gradient(s.q);}
    res[i] = r;
  }
  return res;
}

}  // namespace cubicplan
