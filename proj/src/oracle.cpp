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

#include "cubicplan/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <utility>

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

namespace cubicplan
{

DiscretePath::DiscretePath(const BoundaryData & boundary, int N)
: DiscretePath(hermite(boundary, N)) {}

DiscretePath::DiscretePath(
  const BoundaryData & boundary, int N, const std::vector<Vec> & free_nodes)
: boundary_(boundary), N_(N)
{
  if (N < 6) {throw ContractError("discrete path needs N >= 6");}
  if (static_cast<int>(free_nodes.size()) != N - 3) {
    throw ContractError("discrete path: expected N - 3 free nodes");
  }
  nodes_.assign(N + 1, Vec());
  for (int k = 2; k <= N - 2; ++k) {nodes_[k] = free_nodes[k - 2];}
  eliminate();
}

void DiscretePath::eliminate()
{
  const double dt = step();
  const int N = N_;
  nodes_[0] = boundary_.q_a;
  nodes_[N] = boundary_.q_b;
  nodes_[1] = (6.0 * dt * boundary_.v_a + 11.0 * nodes_[0] + 9.0 * nodes_[2] - 2.0 * nodes_[3]) /
    18.0;
  nodes_[N - 1] =
    (11.0 * nodes_[N] + 9.0 * nodes_[N - 2] - 2.0 * nodes_[N - 3] - 6.0 * dt * boundary_.v_b) /
    18.0;
}

Vec DiscretePath::free_vector() const
{
  const int n = static_cast<int>(boundary_.q_a.size());
  Vec x((N_ - 3) * n);
  for (int k = 2; k <= N_ - 2; ++k) {x.segment((k - 2) * n, n) = nodes_[k];}
  return x;
}

void DiscretePath::set_free_vector(const Vec & x)
{
  const int n = static_cast<int>(boundary_.q_a.size());
  for (int k = 2; k <= N_ - 2; ++k) {nodes_[k] = x.segment((k - 2) * n, n);}
  eliminate();
}

DiscretePath DiscretePath::from_curve(
  const ManifoldChart & chart, const Trajectory & traj, const BoundaryData & boundary, int N)
{
  const SampledCurve curve = traj.sampled(chart);
  std::vector<Vec> free;
  const double dt = (boundary.b - boundary.a) / N;
  for (int k = 2; k <= N - 2; ++k) {free.push_back(curve.interpolate(boundary.a + k * dt).first);}
  return DiscretePath(boundary, N, free);
}

DiscretePath DiscretePath::hermite(const BoundaryData & boundary, int N)
{
  const auto [y, z] = hermite_seed(boundary);
  std::vector<Vec> free;
  const double dt = (boundary.b - boundary.a) / N;
  for (int k = 2; k <= N - 2; ++k) {
    const double t = k * dt;
    free.push_back(boundary.q_a + t * boundary.v_a + (t * t / 2.0) * y + (t * t * t / 6.0) * z);
  }
  return DiscretePath(boundary, N, free);
}

namespace
{

struct Stencil
{
  std::vector<std::pair<int, double>> v;
  std::vector<std::pair<int, double>> d2;
};

Stencil stencil(int k, int N, double dt)
{
  Stencil s;
  const double c1 = 1.0 / (2.0 * dt);
  const double c2 = 1.0 / (dt * dt);
  if (k == 0) {
    s.v = {{0, -3 * c1}, {1, 4 * c1}, {2, -c1}};
    s.d2 = {{0, 2 * c2}, {1, -5 * c2}, {2, 4 * c2}, {3, -c2}};
  } else if (k == N) {
    s.v = {{N, 3 * c1}, {N - 1, -4 * c1}, {N - 2, c1}};
    s.d2 = {{N, 2 * c2}, {N - 1, -5 * c2}, {N - 2, 4 * c2}, {N - 3, -c2}};
  } else {
    s.v = {{k + 1, c1}, {k - 1, -c1}};
    s.d2 = {{k + 1, c2}, {k, -2 * c2}, {k - 1, c2}};
  }
  return s;
}

double weight(int k, int N, double dt) {return k == 0 || k == N ? 0.5 * dt : dt;}

Vec apply(const std::vector<std::pair<int, double>> & st, const std::vector<Vec> & q)
{
  Vec out = Vec::Zero(q.front().size());
  for (const auto & [i, c] : st) {out += c * q[i];}
  return out;
}

double node_density(
  const ManifoldChart & chart, const Potential & potential, const Vec & x, const Vec & v,
  const Vec & d2)
{
  const Vec a = d2 + contract_christoffel(chart.christoffel(x), v, v);
  return 0.5 * a.dot(chart.metric(x) * a) + (potential.is_zero() ? 0.0 : potential.value(x));
}

}  // namespace

double discrete_action(
  const ManifoldChart & chart, const Potential & potential, const DiscretePath & path)
{
  const int N = path.N();
  const double dt = path.step();
  const auto & q = path.nodes();
  double s = 0.0;
  for (int k = 0; k <= N; ++k) {
    chart.require_inside(q[k], "discrete path node");
    const Stencil st = stencil(k, N, dt);
    s += weight(k, N, dt) * node_density(chart, potential, q[k], apply(st.v, q), apply(st.d2, q));
  }
  return s;
}

Vec discrete_action_gradient(
  const ManifoldChart & chart, const Potential & potential, const DiscretePath & path)
{
  const int N = path.N();
  const int n = chart.dim();
  const double dt = path.step();
  const auto & q = path.nodes();
  std::vector<Vec> grad(N + 1, Vec::Zero(n));
  for (int k = 0; k <= N; ++k) {
    chart.require_inside(q[k], "discrete path node");
    const Stencil st = stencil(k, N, dt);
    const Vec v = apply(st.v, q);
    const Vec d2 = apply(st.d2, q);
    const CoordTensor gamma = chart.christoffel(q[k]);
    const Vec a = d2 + contract_christoffel(gamma, v, v);
    const double w = weight(k, N, dt);
    const Vec u = w * (chart.metric(q[k]) * a);
    Mat dadv(n, n);
    for (int i = 0; i < n; ++i) {
      for (int l = 0; l < n; ++l) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) {s += gamma(i, j, l) * v[j];}
        dadv(i, l) = 2.0 * s;
      }
    }
    const Vec uv = dadv.transpose() * u;
    for (const auto & [i, c] : st.d2) {grad[i] += c * u;}
    for (const auto & [i, c] : st.v) {grad[i] += c * uv;}
    // Explicit dependence of the metric, connection and potential on q_k.
    const double h = 1e-3 * std::max(1.0, q[k].cwiseAbs().maxCoeff());
    for (int i = 0; i < n; ++i) {
      auto phi = [&](double s) {
          Vec x = q[k];
          x[i] += s * h;
          return node_density(chart, potential, x, v, d2);
        };
      grad[k][i] += w * (-phi(2) + 8 * phi(1) - 8 * phi(-1) + phi(-2)) / (12.0 * h);
    }
  }
  Vec out((N - 3) * n);
  for (int m = 2; m <= N - 2; ++m) {
    Vec g = grad[m];
    if (m == 2) {g += 0.5 * grad[1];}
    if (m == 3) {g -= grad[1] / 9.0;}
    if (m == N - 2) {g += 0.5 * grad[N - 1];}
    if (m == N - 3) {g -= grad[N - 1] / 9.0;}
    out.segment((m - 2) * n, n) = g;
  }
  return out;
}

namespace
{

/// Hessian of sum_k w_k |d2_k|^2 / 2 over the free nodes of one coordinate.
Eigen::SparseMatrix<double> flat_hessian(int N, double dt)
{
  const int M = N - 3;
  // d2_k as a combination of free nodes, after eliminating q_1 and q_{N-1}.
  std::vector<Eigen::Triplet<double>> trip;
  auto free_index = [&](int node, double c, std::vector<std::pair<int, double>> & out) {
      if (node >= 2 && node <= N - 2) {
        out.emplace_back(node - 2, c);
      } else if (node == 1) {
        out.emplace_back(0, 0.5 * c);
        out.emplace_back(1, -c / 9.0);
      } else if (node == N - 1) {
        out.emplace_back(M - 1, 0.5 * c);
        out.emplace_back(M - 2, -c / 9.0);
      }
    };
  for (int k = 0; k <= N; ++k) {
    const Stencil st = stencil(k, N, dt);
    std::vector<std::pair<int, double>> row;
    for (const auto & [i, c] : st.d2) {free_index(i, c, row);}
    const double w = weight(k, N, dt);
    for (const auto & [i, ci] : row) {
      for (const auto & [j, cj] : row) {trip.emplace_back(i, j, w * ci * cj);}
    }
  }
  Eigen::SparseMatrix<double> H(M, M);
  H.setFromTriplets(trip.begin(), trip.end());
  return H;
}

}  // namespace

DiscreteMinimum minimize_discrete(
  const ManifoldChart & chart, const Potential & potential, const BoundaryData & boundary,
  int N, const std::optional<DiscretePath> & seed, const MinimizeOptions & options)
{
  boundary.validate(chart);
  const int n = chart.dim();
  DiscretePath path = seed ? *seed : DiscretePath::hermite(boundary, N);
  if (path.N() != N) {throw ContractError("minimize_discrete: seed has a different N");}
  const int M = N - 3;
  const Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> pre(flat_hessian(N, path.step()));
  if (pre.info() != Eigen::Success) {
    throw NumericalError("minimize_discrete: preconditioner factorisation failed");
  }
  auto precondition = [&](const Vec & g) {
      const Eigen::Map<const Mat> gm(g.data(), n, M);
      const Mat z = pre.solve(Mat(gm.transpose()));
      const Mat zt = z.transpose();
      return Vec(Eigen::Map<const Vec>(zt.data(), n * M));
    };

  auto eval = [&](const Vec & x, double & s, Vec & g) {
      DiscretePath p = path;
      p.set_free_vector(x);
      for (const auto & node : p.nodes()) {
        if (!chart.contains(node)) {return false;}
      }
      s = discrete_action(chart, potential, p);
      g = discrete_action_gradient(chart, potential, p);
      return std::isfinite(s) && g.allFinite();
    };

  Vec x = path.free_vector();
  double S = 0.0;
  Vec g;
  if (!eval(x, S, g)) {throw ChartEscapeError("minimize_discrete: seed leaves the chart", 0.0);}
  Vec z = precondition(g);
  Vec d = -z;
  double gz = g.dot(z);
  int it = 0;
  for (; it < options.max_iterations; ++it) {
    if (g.cwiseAbs().maxCoeff() <= options.gradient_tolerance) {break;}
    double dphi0 = g.dot(d);
    if (!(dphi0 < 0.0)) {
      d = -z;
      dphi0 = -gz;
    }
    double alpha = 1.0;
    bool accepted = false;
    Vec xn, gn;
    double Sn = 0.0;
    for (int bt = 0; bt < 60 && !accepted; ++bt, alpha *= 0.5) {
      xn = x + alpha * d;
      if (!eval(xn, Sn, gn)) {continue;}
      if (Sn <= S + 1e-4 * alpha * dphi0 && Sn <= S) {
        accepted = true;
        break;
      }
      if (std::abs(alpha * dphi0) < 1e-11 * (1.0 + std::abs(S))) {
        // Below the resolution of S: find the zero of the directional
        // derivative by a secant step instead.
        const double dphi = gn.dot(d);
        if (dphi > dphi0) {
          const double a2 = alpha * (-dphi0) / (dphi - dphi0);
          Vec x2 = x + a2 * d, g2;
          double S2 = 0.0;
          if (eval(x2, S2, g2) && S2 <= S + 1e-12 * (1.0 + std::abs(S)) &&
            g2.cwiseAbs().maxCoeff() < g.cwiseAbs().maxCoeff())
          {
            xn = std::move(x2);
            gn = std::move(g2);
            Sn = S2;
            accepted = true;
            break;
          }
        }
      }
    }
    if (!accepted) {break;}
    const Vec zn = precondition(gn);
    const double gzn = gn.dot(zn);
    const double beta = std::max(0.0, (gzn - gn.dot(z)) / gz);
    d = -zn + beta * d;
    x = std::move(xn);
    g = std::move(gn);
    z = zn;
    gz = gzn;
    S = Sn;
  }
  path.set_free_vector(x);
  DiscreteMinimum best{path, S, g.cwiseAbs().maxCoeff(), it};
  if (best.gradient_norm > options.gradient_tolerance) {
    throw DiscreteNonConvergence(
            "discrete minimisation stopped with gradient " + std::to_string(best.gradient_norm),
            best);
  }
  return best;
}

OracleComparison compare_with_shooting(
  const ManifoldChart & chart, const Potential & potential, const BoundaryData & boundary,
  const Trajectory & shooting, int N, const MinimizeOptions & options)
{
  const DiscreteMinimum m = minimize_discrete(chart, potential, boundary, N, std::nullopt, options);
  const SampledCurve curve = shooting.sampled(chart);
  OracleComparison out;
  out.N = N;
  for (int k = 0; k <= N; ++k) {
    const Vec ref = curve.interpolate(m.path.time(k)).first;
    out.sup_distance = std::max(out.sup_distance, (m.path.nodes()[k] - ref).cwiseAbs().maxCoeff());
  }
  out.action_discrete = m.action;
  out.action_shooting = action(chart, potential, shooting);
  out.action_gap = std::abs(out.action_discrete - out.action_shooting);
  out.iterations = m.iterations;
  out.gradient_norm = m.gradient_norm;
  return out;
}

UniquenessReport check_uniqueness_props(
  const ManifoldChart & chart, const Potential & potential, const Trajectory & traj,
  const UniquenessOptions & options)
{
  UniquenessReport out;
  const int M = static_cast<int>(traj.size()) - 1;
  if (M < 20) {throw ContractError("check_uniqueness_props: trajectory too short");}
  std::mt19937_64 rng(options.seed);
  const int minlen = std::max(10, M / 10);
  for (int c = 0; c < options.subintervals; ++c) {
    const int i = std::uniform_int_distribution<int>(0, M - minlen)(rng);
    const int j = std::uniform_int_distribution<int>(i + minlen, M)(rng);
    const CurveState & si = traj.states[i];
    const CurveState & sj = traj.states[j];
    BoundaryData bd{si.q, si.v, sj.q, sj.v, si.t, sj.t};
    SolverOptions so;
    so.steps = j - i;
    SubIntervalCheck check{si.t, sj.t, 0.0, false};
    try {
      const ShootingResult r = solve_bvp(chart, potential, bd, std::nullopt, so);
      check.converged = true;
      for (int k = 0; k <= j - i; ++k) {
        const auto & a = r.trajectory.states[k];
        const auto & b = traj.states[i + k];
        check.deviation = std::max(
          {check.deviation, (a.q - b.q).cwiseAbs().maxCoeff(), (a.v - b.v).cwiseAbs().maxCoeff()});
      }
    } catch (const Error &) {
      out.inconclusive = true;
    }
    out.restrictions.push_back(check);
  }
  out.restriction_ok = true;
  for (const auto & r : out.restrictions) {
    if (r.converged && !(r.deviation <= options.restriction_tolerance)) {out.restriction_ok = false;}
  }

  const int tau = std::uniform_int_distribution<int>(1, M - 1)(rng);
  const CurveState & s = traj.states[tau];
  out.tangent_time = s.t;
  double dev = 0.0;
  const Trajectory fwd = integrate_steps(chart, potential, s, traj.end_time() - s.t, 2 * (M - tau));
  for (int k = 0; k <= M - tau; ++k) {
    const auto & a = fwd.states[2 * k];
    const auto & b = traj.states[tau + k];
    dev = std::max({dev, (a.q - b.q).cwiseAbs().maxCoeff(), (a.v - b.v).cwiseAbs().maxCoeff()});
  }
  // The modified cubic equation is invariant under t -> -t with v, j negated.
  CurveState rev = s;
  rev.v = -s.v;
  rev.j = -s.j;
  const Trajectory bwd = integrate_steps(chart, potential, rev, s.t - traj.start_time(), 2 * tau);
  for (int k = 0; k <= tau; ++k) {
    const auto & a = bwd.states[2 * k];
    const auto & b = traj.states[tau - k];
    dev = std::max({dev, (a.q - b.q).cwiseAbs().maxCoeff(), (a.v + b.v).cwiseAbs().maxCoeff()});
  }
  out.tangent_deviation = dev;
  out.tangent_ok = dev <= options.tangent_tolerance;
  return out;
}

}  // namespace cubicplan
