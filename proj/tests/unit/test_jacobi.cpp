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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cubicplan/bvp.hpp"
#include "cubicplan/index.hpp"
#include "cubicplan/jacobi.hpp"
#include "helpers.hpp"

using namespace cubicplan;
using cubicplan::testing::linear_quartic;
using cubicplan::testing::random_vec;
using cubicplan::testing::vec;

namespace
{

// First positive root of cosh(t) cos(t) = 1, by bisection.
double crest_root()
{
  double lo = 4.0, hi = 5.0;
  auto f = [](double t) {return std::cosh(t) * std::cos(t) - 1.0;};
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(lo) * f(mid) <= 0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

// q = 0 on the crest of V = exp(-q^2 / 2) in R^1: Jacobi fields obey X'''' = X.
struct Crest
{
  ChartPtr chart = make_euclidean(1);
  PotentialPtr potential = gaussian_obstacle(chart, vec({0.0}), 1.0, 1.0);
  Trajectory traj(double T, int steps) const
  {
    return integrate_steps(*chart, *potential,
             CurveState{0.0, vec({0}), vec({0}), vec({0}), vec({0})}, T, steps);
  }
};

Vec constant_curvature_F(
  const ManifoldChart & chart, double kappa, const CurveState & s, const Vec & X, const Vec & dX,
  const Vec & d2X)
{
  const Vec & q = s.q;
  auto R = [&](const Vec & a, const Vec & b, const Vec & c) -> Vec {
      return kappa * (inner(chart, q, b, c) * a - inner(chart, q, a, c) * b);
    };
  const Vec & Y = s.v;
  return R(R(X, Y, Y), Y, Y) + R(X, s.j, Y) + 3 * R(X, Y, s.j) + 3 * R(X, s.a, s.a) +
         4 * R(dX, Y, s.a) + 2 * R(d2X, Y, Y);
}

}  // namespace

TEST(Jacobi, FlatOperatorVanishes)
{
  const ChartPtr e = make_euclidean(3);
  const CurveState s{0, vec({1, 2, 3}), vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1})};
  const FCoefficients f = f_coefficients(*e, s);
  EXPECT_EQ(f.F0.norm() + f.F1.norm() + f.F2.norm(), 0.0);
}

TEST(Jacobi, ConstantCurvatureReduction)
{
  std::mt19937_64 rng(51);
  const std::vector<std::pair<ChartPtr, double>> charts = {
    {make_sphere2(), 1.0}, {make_hyperbolic2(), -1.0}, {make_so3(), 0.25}};
  for (const auto & [chart, kappa] : charts) {
    const int n = chart->dim();
    for (int trial = 0; trial < 5; ++trial) {
      const CurveState s{0, random_vec(rng, n, 0.3), random_vec(rng, n, 1), random_vec(rng, n, 1),
        random_vec(rng, n, 1)};
      const Vec X = random_vec(rng, n, 1), dX = random_vec(rng, n, 1), d2X = random_vec(rng, n, 1);
      const Vec expected = constant_curvature_F(*chart, kappa, s, X, dX, d2X);
      EXPECT_LT((f_operator(*chart, s, X, dX, d2X) - expected).norm(), 1e-10 * (1 + expected.norm()))
        << chart->id();
    }
  }
}

TEST(Jacobi, OperatorIsLinear)
{
  std::mt19937_64 rng(52);
  for (const auto & c : cubicplan::testing::panel(false, true)) {
    const int n = c.chart->dim();
    const Vec X1 = random_vec(rng, n, 1), X2 = random_vec(rng, n, 1);
    const Vec D1 = random_vec(rng, n, 1), D2 = random_vec(rng, n, 1);
    const Vec E1 = random_vec(rng, n, 1), E2 = random_vec(rng, n, 1);
    const double al = 0.7, be = -1.3;
    const Vec lhs = f_operator(*c.chart, c.start, al * X1 + be * X2, al * D1 + be * D2, al * E1 + be * E2);
    const Vec rhs = al * f_operator(*c.chart, c.start, X1, D1, E1) +
      be * f_operator(*c.chart, c.start, X2, D2, E2);
    EXPECT_LT((lhs - rhs).norm(), 1e-12 * (1 + rhs.norm())) << c.name;
    const FCoefficients f = f_coefficients(*c.chart, c.start);
    EXPECT_LT((f.F0 * X1 + f.F1 * D1 + f.F2 * E1 - f_operator(*c.chart, c.start, X1, D1, E1)).norm(),
      1e-12 * (1 + rhs.norm()));
  }
}

TEST(Jacobi, NumericChartMatchesAnalyticSphere)
{
  const ChartPtr num = make_numeric_chart_from_json_text(R"({"family": "sphere2_stereographic"})", "ns");
  const ChartPtr ana = make_sphere2();
  const CurveState s{0, vec({0.2, -0.3}), vec({0.5, 0.4}), vec({-0.2, 0.3}), vec({0.1, 0.2})};
  const Vec X = vec({0.3, -0.4}), dX = vec({0.1, 0.2}), d2X = vec({-0.5, 0.3});
  const Vec ref = f_operator(*ana, s, X, dX, d2X);
  EXPECT_LT((f_operator(*num, s, X, dX, d2X) - ref).norm(), 1e-4 * (1 + ref.norm()));
}

TEST(Jacobi, LinearizationOfBiexp)
{
  // a bi-Jacobi field with X = DX = 0 at the start is the derivative of the
  // family of modified cubics obtained by varying the initial jets
  std::mt19937_64 rng(53);
  for (const auto & c : cubicplan::testing::panel(true, true)) {
    const int n = c.chart->dim();
    const int steps = 800;
    const double T = 1.0;
    const Trajectory tr = integrate_steps(*c.chart, *c.potential, c.start, T, steps);
    const Vec cc = random_vec(rng, n, 1), dd = random_vec(rng, n, 1);
    const FieldSamples J = propagate_jacobi(*c.chart, *c.potential, tr,
        JacobiState{0, Vec::Zero(n), Vec::Zero(n), cc, dd});
    const double eps = 1e-5;
    const auto [qp, vp] = biexp(*c.chart, *c.potential, c.start.q, c.start.v, c.start.a + eps * cc,
        c.start.j + eps * dd, T, steps);
    const auto [qm, vm] = biexp(*c.chart, *c.potential, c.start.q, c.start.v, c.start.a - eps * cc,
        c.start.j - eps * dd, T, steps);
    const Vec X = (qp - qm) / (2 * eps);
    const Vec dX = (vp - vm) / (2 * eps) +
      contract_christoffel(c.chart->christoffel(tr.back().q), tr.back().v, X);
    EXPECT_LT((J.X.back() - X).norm(), 1e-4 * X.norm()) << c.name;
    EXPECT_LT((J.dX.back() - dX).norm(), 1e-4 * (X.norm() + dX.norm())) << c.name;
  }
}

TEST(Jacobi, FlatClosedForm)
{
  const ChartPtr e = make_euclidean(2);
  const auto V = zero_potential(e);
  const Trajectory tr = integrate_steps(*e, *V,
      CurveState{0, vec({0, 0}), vec({1, 0}), vec({0, 1}), vec({1, 1})}, 2.0, 200);
  const Vec c = vec({0.3, -0.2}), d = vec({0.5, 0.1});
  const FieldSamples J = propagate_jacobi(*e, *V, tr, JacobiState{0, Vec::Zero(2), Vec::Zero(2), c, d});
  for (std::size_t i = 0; i < J.size(); i += 20) {
    const double t = tr.states[i].t;
    EXPECT_LT((J.X[i] - (t * t / 2 * c + t * t * t / 6 * d)).norm(), 1e-12);
  }
}

TEST(Jacobi, HarmonicQuarticClosedForm)
{
  const ChartPtr e = make_euclidean(1);
  const auto V = quadratic_well(e, vec({0.0}), 1.0);
  const Trajectory tr = integrate_steps(*e, *V,
      CurveState{0, vec({0.2}), vec({0.1}), vec({0}), vec({0})}, 3.0, 1000);
  const Eigen::Vector4d jets(0.1, -0.4, 0.3, 0.2);
  const FieldSamples J = propagate_jacobi(*e, *V, tr,
      JacobiState{0, vec({jets[0]}), vec({jets[1]}), vec({jets[2]}), vec({jets[3]})});
  for (std::size_t i = 0; i < J.size(); i += 100) {
    const Eigen::Vector4d x = linear_quartic(-1.0, jets, tr.states[i].t);
    EXPECT_NEAR(J.X[i][0], x[0], 1e-6);
    EXPECT_NEAR(J.d3X[i][0], x[3], 1e-6);
  }
}

TEST(Jacobi, Superposition)
{
  std::mt19937_64 rng(54);
  const auto panel = cubicplan::testing::panel(true);
  const auto & c = panel[3];
  const int n = c.chart->dim();
  const Trajectory tr = integrate_steps(*c.chart, *c.potential, c.start, 1.0, 400);
  auto jet = [&] {
      return JacobiState{0, random_vec(rng, n, 1), random_vec(rng, n, 1), random_vec(rng, n, 1),
        random_vec(rng, n, 1)};
    };
  const JacobiState a = jet(), b = jet();
  const JacobiState s{0, a.X + 2 * b.X, a.dX + 2 * b.dX, a.d2X + 2 * b.d2X, a.d3X + 2 * b.d3X};
  const auto fields = propagate_jacobi(*c.chart, *c.potential, tr, 0, {a, b, s});
  for (std::size_t i = 0; i < tr.size(); i += 50) {
    EXPECT_LT((fields[0].X[i] + 2 * fields[1].X[i] - fields[2].X[i]).norm(), 1e-9);
    EXPECT_LT((fields[0].d3X[i] + 2 * fields[1].d3X[i] - fields[2].d3X[i]).norm(), 1e-9);
  }
}

TEST(Jacobi, FundamentalSystemHasFullRank)
{
  for (const auto & c : cubicplan::testing::panel(true)) {
    const int n = c.chart->dim();
    const Trajectory tr = integrate_steps(*c.chart, *c.potential, c.start, 1.0, 400);
    std::vector<JacobiState> init;
    for (int k = 0; k < 4 * n; ++k) {
      JacobiState s{0, Vec::Zero(n), Vec::Zero(n), Vec::Zero(n), Vec::Zero(n)};
      Vec * parts[4] = {&s.X, &s.dX, &s.d2X, &s.d3X};
      (*parts[k / n])[k % n] = 1.0;
      init.push_back(s);
    }
    const auto fields = propagate_jacobi(*c.chart, *c.potential, tr, 0, init);
    Mat M(4 * n, 4 * n);
    for (int k = 0; k < 4 * n; ++k) {
      M.col(k) << fields[k].X.back(), fields[k].dX.back(), fields[k].d2X.back(), fields[k].d3X.back();
    }
    Eigen::JacobiSVD<Mat> svd(M);
    const Vec sv = svd.singularValues();
    EXPECT_GE(sv[4 * n - 1] / sv[0], 1e-10) << c.name;
  }
}

TEST(Jacobi, RestartAtInteriorNode)
{
  const auto panel = cubicplan::testing::panel(true);
  const auto & c = panel[1];
  const Trajectory tr = integrate_steps(*c.chart, *c.potential, c.start, 1.0, 400);
  const JacobiState s{0, vec({0.1, 0.2}), vec({-0.3, 0.1}), vec({0.2, 0.2}), vec({0.5, -0.1})};
  const FieldSamples full = propagate_jacobi(*c.chart, *c.potential, tr, s);
  const std::size_t k = 150;
  const auto rest = propagate_jacobi(*c.chart, *c.potential, tr, k,
      {JacobiState{tr.states[k].t, full.X[k], full.dX[k], full.d2X[k], full.d3X[k]}});
  EXPECT_LT((rest[0].X.back() - full.X.back()).norm(), 1e-9);
  EXPECT_LT((rest[0].d3X.back() - full.d3X.back()).norm(), 1e-9);
  // running backward from the end returns to the start
  const auto back = propagate_jacobi(*c.chart, *c.potential, tr, tr.size() - 1,
      {JacobiState{1.0, full.X.back(), full.dX.back(), full.d2X.back(), full.d3X.back()}}, true);
  EXPECT_LT((back[0].X.back() - s.X).norm(), 1e-9);
  EXPECT_LT((back[0].d3X.back() - s.d3X).norm(), 1e-8);
}

TEST(Jacobi, FlatScanIsEmpty)
{
  const ChartPtr e = make_euclidean(2);
  const auto V = zero_potential(e);
  const Trajectory tr = integrate_steps(*e, *V,
      CurveState{0, vec({0, 0}), vec({1, 0}), vec({0, 1}), vec({1, 1})}, 5.0, 500);
  const BiconjugateReport r = biconjugate_scan(*e, *V, tr, 0.0);
  EXPECT_TRUE(r.points.empty());
  EXPECT_NEAR(r.resolution, 0.01, 1e-15);
}

TEST(Jacobi, HarmonicQuarticHasNoBiconjugatePoints)
{
  // independent check: det [[x1, x2], [x1', x2']] of the two fields with
  // zero value and slope at 0 stays positive
  for (double t = 0.05; t <= 10.0; t += 0.05) {
    const Eigen::Vector4d x1 = linear_quartic(-1.0, Eigen::Vector4d(0, 0, 1, 0), t);
    const Eigen::Vector4d x2 = linear_quartic(-1.0, Eigen::Vector4d(0, 0, 0, 1), t);
    ASSERT_GT(x1[0] * x2[1] - x1[1] * x2[0], 0.0) << t;
  }
  const ChartPtr e = make_euclidean(1);
  const auto V = quadratic_well(e, vec({0.0}), 1.0);
  const Trajectory tr = integrate_steps(*e, *V, CurveState{0, vec({0}), vec({0}), vec({0}), vec({0})},
      10.0, 2000);
  EXPECT_TRUE(biconjugate_scan(*e, *V, tr, 0.0).points.empty());
}

TEST(Jacobi, CrestBiconjugatePoint)
{
  const Crest crest;
  const Trajectory tr = crest.traj(6.0, 2400);
  const BiconjugateReport r = biconjugate_scan(*crest.chart, *crest.potential, tr, 0.0);
  ASSERT_EQ(r.points.size(), 1u);
  EXPECT_NEAR(r.points[0].t, crest_root(), 1e-5);
  EXPECT_LE(r.points[0].witness_residual, 1e-6);
  EXPECT_LE(r.points[0].sigma_ratio, 1e-8);
}

TEST(Jacobi, ScanInBothDirections)
{
  const Crest crest;
  const Trajectory tr = crest.traj(12.0, 4800);
  const BiconjugateReport r = biconjugate_scan(*crest.chart, *crest.potential, tr, 6.0);
  ASSERT_EQ(r.points.size(), 2u);
  EXPECT_NEAR(r.points[0].t, 6.0 - crest_root(), 1e-5);
  EXPECT_NEAR(r.points[1].t, 6.0 + crest_root(), 1e-5);
  ScanOptions forward_only;
  forward_only.backward = false;
  EXPECT_EQ(biconjugate_scan(*crest.chart, *crest.potential, tr, 6.0, forward_only).points.size(), 1u);
  EXPECT_THROW(biconjugate_scan(*crest.chart, *crest.potential, tr, 13.0), ContractError);
}

TEST(Jacobi, NegativeDirection)
{
  const Crest crest;
  const Trajectory tr = crest.traj(6.0, 2400);
  const double t2 = biconjugate_scan(*crest.chart, *crest.potential, tr, 0.0).points.at(0).t;
  const NegativeDirection nd = negative_direction(*crest.chart, *crest.potential, tr, 0.0, t2);
  EXPECT_LT(nd.value, 0.0);
  EXPECT_GT(nd.epsilon, 0.0);
  // the extended witness alone has I(X, X) = 0
  const NegativeDirection zero = negative_direction(*crest.chart, *crest.potential, tr, 0.0, t2,
      nd.delta, 0.0);
  EXPECT_NEAR(zero.value, 0.0, 1e-6);
  EXPECT_NEAR(nd.value, nd.i_xx + nd.epsilon * (nd.i_xy + nd.i_yx) +
    nd.epsilon * nd.epsilon * nd.i_yy, 1e-9 * (1 + std::abs(nd.i_yy)));
  // the constructed field vanishes to first order at both ends
  EXPECT_LT(nd.U.front().norm(), 1e-12);
  EXPECT_LT(nd.U.back().norm(), 1e-12);
  EXPECT_THROW(negative_direction(*crest.chart, *crest.potential, tr, 0.0, 3.0), ContractError);
}
