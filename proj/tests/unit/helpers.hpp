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

#ifndef TESTS__UNIT__HELPERS_HPP_
#define TESTS__UNIT__HELPERS_HPP_

#include <complex>
#include <random>
#include <string>
#include <vector>

#include "cubicplan/bvp.hpp"
#include "cubicplan/fields.hpp"

namespace cubicplan::testing
{

inline Vec vec(std::initializer_list<double> v)
{
  Vec out(static_cast<int>(v.size()));
  int i = 0;
  for (double x : v) {out[i++] = x;}
  return out;
}

inline Vec random_vec(std::mt19937_64 & rng, int n, double scale)
{
  std::uniform_real_distribution<double> u(-scale, scale);
  Vec v(n);
  for (int i = 0; i < n; ++i) {v[i] = u(rng);}
  return v;
}

inline ChartPtr numeric_bump_chart()
{
  return make_numeric_chart_from_json_text(
    R"({"family": "conformal_bump", "dim": 2, "amplitude": 0.4, "width": 0.8,
        "center": [0.2, -0.1]})",
    "numeric:bump");
}

/// A chart with a Gaussian obstacle and a reference state, for panels.
struct PanelCase
{
  std::string name;
  ChartPtr chart;
  PotentialPtr potential;
  CurveState start;
};

inline std::vector<PanelCase> panel(bool with_obstacles, bool include_numeric = false)
{
  std::vector<PanelCase> out;
  auto add = [&](std::string name, ChartPtr chart, Vec q, Vec v, Vec a, Vec j, Vec c) {
      PotentialPtr pot = with_obstacles ?
        gaussian_obstacle(chart, c, 0.5, 0.4) : zero_potential(chart);
      out.push_back({name, chart, pot, CurveState{0.0, q, v, a, j}});
    };
  add("euclidean2", make_euclidean(2), vec({0.1, -0.2}), vec({0.8, 0.3}), vec({0.2, -0.4}),
    vec({0.3, 0.5}), vec({0.5, 0.1}));
  add("sphere2", make_sphere2(), vec({0.1, -0.2}), vec({0.7, 0.4}), vec({0.3, -0.2}),
    vec({0.5, 0.1}), vec({0.3, 0.1}));
  add("hyperbolic2", make_hyperbolic2(), vec({0.05, -0.1}), vec({0.3, 0.2}), vec({0.1, -0.1}),
    vec({0.2, 0.05}), vec({0.15, 0.0}));
  add("so3", make_so3(), vec({0.2, -0.1, 0.3}), vec({0.5, 0.3, -0.2}), vec({0.1, -0.3, 0.2}),
    vec({0.2, 0.1, -0.1}), vec({0.4, 0.0, 0.3}));
  if (include_numeric) {
    add("numeric_bump", numeric_bump_chart(), vec({-0.1, 0.0}), vec({0.6, 0.2}),
      vec({0.2, -0.1}), vec({0.1, 0.2}), vec({0.2, 0.1}));
  }
  return out;
}

/// Real solution of x'''' = s x with the given initial jets, by complex
/// exponentials e^{lambda t}, lambda^4 = s.
inline Eigen::Vector4d linear_quartic(double s, const Eigen::Vector4d & jets, double t)
{
  using C = std::complex<double>;
  const double r = std::pow(std::abs(s), 0.25);
  const double pi = 3.14159265358979323846;
  const double phase = s < 0 ? pi / 4 : 0.0;
  Eigen::Vector4cd lam;
  for (int k = 0; k < 4; ++k) {lam[k] = std::polar(r, phase + k * pi / 2);}
  Eigen::Matrix4cd V;
  for (int row = 0; row < 4; ++row) {
    for (int k = 0; k < 4; ++k) {V(row, k) = std::pow(lam[k], row);}
  }
  const Eigen::Vector4cd c = V.fullPivLu().solve(jets.cast<C>());
  Eigen::Vector4d out;
  for (int row = 0; row < 4; ++row) {
    C acc = 0.0;
    for (int k = 0; k < 4; ++k) {acc += c[k] * std::pow(lam[k], row) * std::exp(lam[k] * t);}
    out[row] = acc.real();
  }
  return out;
}

/// Random smooth admissible field along the trajectory.
inline AdmissibleField random_field(
  const Trajectory & traj, const std::vector<Mat> & frame, std::mt19937_64 & rng, int degree = 3)
{
  const int n = static_cast<int>(frame.front().cols());
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> c(n * (degree + 1));
  for (double & x : c) {x = u(rng);}
  return AdmissibleField(random_admissible_field(traj, frame, c, degree));
}

}  // namespace cubicplan::testing

#endif  // TESTS__UNIT__HELPERS_HPP_
