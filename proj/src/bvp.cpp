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

#include "cubicplan/bvp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>

namespace cubicplan
{

double BoundaryData::scale() const
{
  double s = 0.0;
  for (const Vec * x : {&q_a, &v_a, &q_b, &v_b}) {
    if (x->size() > 0) {s = std::max(s, x->cwiseAbs().maxCoeff());}
  }
  return s;
}

void BoundaryData::validate(const ManifoldChart & chart) const
{
  const int n = chart.dim();
  if (q_a.size() != n || v_a.size() != n || q_b.size() != n || v_b.size() != n) {
    throw ContractError("boundary data has the wrong dimension");
  }
  if (!(b > a)) {throw ContractError("boundary interval needs b > a");}
  if (!q_a.allFinite() || !v_a.allFinite() || !q_b.allFinite() || !v_b.allFinite()) {
    throw ContractError("boundary data must be finite");
  }
  chart.require_inside(q_a, "boundary point q_a");
  chart.require_inside(q_b, "boundary point q_b");
}

namespace
{

CurveState start_state(double t, const Vec & p, const Vec & v, const Vec & y, const Vec & z)
{
  CurveState s;
  s.t = t;
  s.q = p;
  s.v = v;
  s.a = y;
  s.j = z;
  return s;
}

Vec residual_of(const Trajectory & traj, const BoundaryData & bd)
{
  const int n = static_cast<int>(bd.q_a.size());
  Vec r(2 * n);
  r.head(n) = traj.back().q - bd.q_b;
  r.tail(n) = traj.back().v - bd.v_b;
  return r;
}

}  // namespace

std::pair<Vec, Vec> biexp(
  const ManifoldChart & chart, const Potential & potential, const Vec & p, const Vec & v,
  const Vec & y, const Vec & z, double t, int steps)
{
  if (!(t > 0.0)) {throw ContractError("biexp: need t > 0");}
  const Trajectory traj = integrate_steps(chart, potential, start_state(0.0, p, v, y, z), t, steps);
  return {traj.back().q, traj.back().v};
}

Mat biexp_jacobian(
  const ManifoldChart & chart, const Potential & potential, const Vec & p, const Vec & v,
  const Vec & y, const Vec & z, double t, int steps, double relative_step)
{
  const int n = static_cast<int>(p.size());
  Vec yz(2 * n);
  yz << y, z;
  const double h = relative_step * (1.0 + yz.norm());
  Mat jac(2 * n, 2 * n);
  for (int c = 0; c < 2 * n; ++c) {
    Vec plus = yz, minus = yz;
    plus[c] += h;
    minus[c] -= h;
    const auto fp = biexp(chart, potential, p, v, plus.head(n), plus.tail(n), t, steps);
    const auto fm = biexp(chart, potential, p, v, minus.head(n), minus.tail(n), t, steps);
    jac.block(0, c, n, 1) = (fp.first - fm.first) / (2.0 * h);
    jac.block(n, c, n, 1) = (fp.second - fm.second) / (2.0 * h);
  }
  return jac;
}

Seed hermite_seed(const BoundaryData & bd)
{
  const double tau = bd.duration();
  const Vec d = bd.q_b - bd.q_a - tau * bd.v_a;
  const Vec e = bd.v_b - bd.v_a;
  return {6.0 * d / (tau * tau) - 2.0 * e / tau, 6.0 * e / (tau * tau) - 12.0 * d / (tau * tau * tau)};
}

ShootingResult solve_bvp(
  const ManifoldChart & chart, const Potential & potential, const BoundaryData & bd,
  const std::optional<Seed> & seed, const SolverOptions & opt)
{
  bd.validate(chart);
  const int n = chart.dim();
  const double T = bd.duration();
  Seed s = seed ? *seed : hermite_seed(bd);
  if (s.first.size() != n || s.second.size() != n) {throw ContractError("seed has the wrong size");}
  Vec yz(2 * n);
  yz << s.first, s.second;
  const double tol = opt.tolerance * (1.0 + bd.scale());

  auto shoot = [&](const Vec & x) {
      return integrate_steps(
        chart, potential, start_state(bd.a, bd.q_a, bd.v_a, x.head(n), x.tail(n)), T, opt.steps);
    };

  ShootingResult out;
  Trajectory traj = shoot(yz);
  Vec F = residual_of(traj, bd);
  double res = F.norm();
  out.residual_history.push_back(res);
  int it = 0;
  for (; res > tol; ++it) {
    if (it >= opt.max_iterations) {
      throw NonConvergenceError(
              "shooting did not converge in " + std::to_string(opt.max_iterations) +
              " iterations (residual " + std::to_string(res) + ")",
              yz.head(n), yz.tail(n), res);
    }
    const Mat jac = biexp_jacobian(
      chart, potential, bd.q_a, bd.v_a, yz.head(n), yz.tail(n), T, opt.steps, opt.fd_step);
    Eigen::JacobiSVD<Mat> svd(jac, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Vec sv = svd.singularValues();
    if (!(sv[2 * n - 1] >= opt.singular_ratio * sv[0])) {
      throw CriticalBiexpError(
              "differential of the bi-exponential map is singular; the endpoint may be "
              "biconjugate to the start", sv[0] / sv[2 * n - 1]);
    }
    const Vec step = -svd.solve(F);
    double alpha = 1.0;
    bool accepted = false;
    for (int bt = 0; bt <= opt.max_backtracks; ++bt, alpha *= 0.5) {
      const Vec trial = yz + alpha * step;
      try {
        Trajectory tt = shoot(trial);
        const Vec Ft = residual_of(tt, bd);
        const double rt = Ft.norm();
        if (std::isfinite(rt) && rt * rt <= (1.0 - 2e-4 * alpha) * res * res) {
          yz = trial;
          traj = std::move(tt);
          F = Ft;
          res = rt;
          accepted = true;
          break;
        }
      } catch (const DomainError &) {
      } catch (const NumericalError &) {
      }
    }
    if (!accepted) {
      throw NonConvergenceError(
              "line search failed to reduce the shooting residual (" + std::to_string(res) + ")",
              yz.head(n), yz.tail(n), res);
    }
    out.residual_history.push_back(res);
  }
  const Mat jac = biexp_jacobian(
    chart, potential, bd.q_a, bd.v_a, yz.head(n), yz.tail(n), T, opt.steps, opt.fd_step);
  Eigen::JacobiSVD<Mat> svd(jac);
  const Vec sv = svd.singularValues();
  out.jacobian_condition = sv[2 * n - 1] > 0 ? sv[0] / sv[2 * n - 1] : INFINITY;
  out.y = yz.head(n);
  out.z = yz.tail(n);
  out.iterations = it;
  out.residual = res;
  out.action = action(chart, potential, traj);
  out.trajectory = std::move(traj);
  return out;
}

std::vector<ShootingResult> continuation_sweep(
  const ManifoldChart & chart, const PotentialFamily & family, const BoundaryData & bd,
  const std::vector<double> & lambdas, const SolverOptions & opt)
{
  if (lambdas.empty() || lambdas.front() != 0.0) {
    throw ContractError("continuation_sweep: the lambda grid must start at 0");
  }
  std::vector<ShootingResult> out;
  std::optional<Seed> seed;
  for (double lambda : lambdas) {
    const std::string at = " (at lambda = " + std::to_string(lambda) + ")";
    try {
      const PotentialPtr v = family(lambda);
      out.push_back(solve_bvp(chart, *v, bd, seed, opt));
    } catch (const NonConvergenceError & e) {
      throw NonConvergenceError(e.what() + at, e.best_y(), e.best_z(), e.best_residual());
    } catch (const CriticalBiexpError & e) {
      throw CriticalBiexpError(e.what() + at, e.condition());
    } catch (const ChartEscapeError & e) {
      throw ChartEscapeError(e.what() + at, e.escape_time());
    }
    seed = Seed{out.back().y, out.back().z};
  }
  return out;
}

std::vector<ShootingResult> continuation_sweep(
  const ManifoldChart & chart, const PotentialPtr & target, const BoundaryData & bd,
  const std::vector<double> & lambdas, const SolverOptions & opt)
{
  return continuation_sweep(
    chart, [&](double lambda) {return scaled(target, lambda);}, bd, lambdas, opt);
}

std::vector<ShootingResult> multi_seed_solve(
  const ManifoldChart & chart, const Potential & potential, const BoundaryData & bd, int count,
  std::uint64_t seed, const SolverOptions & opt)
{
  const int n = chart.dim();
  const Seed base = hermite_seed(bd);
  const double spread = 1.0 + std::max(base.first.norm(), base.second.norm());
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::map<std::vector<long long>, ShootingResult> found;
  for (int k = 0; k < count; ++k) {
    Seed s = base;
    if (k > 0) {
      for (int i = 0; i < n; ++i) {
        s.first[i] += spread * unit(rng);
        s.second[i] += spread * unit(rng);
      }
    }
    try {
      ShootingResult r = solve_bvp(chart, potential, bd, s, opt);
      std::vector<long long> key;
      for (int i = 0; i < n; ++i) {key.push_back(std::llround(r.y[i] / 1e-5));}
      for (int i = 0; i < n; ++i) {key.push_back(std::llround(r.z[i] / 1e-5));}
      found.emplace(std::move(key), std::move(r));
    } catch (const Error &) {
    }
  }
  std::vector<ShootingResult> out;
  for (auto & kv : found) {out.push_back(std::move(kv.second));}
  std::stable_sort(
    out.begin(), out.end(),
    [](const ShootingResult & a, const ShootingResult & b) {return a.action < b.action;});
  return out;
}

}  // namespace cubicplan
