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

#include "cubicplan/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace cubicplan
{

std::string format_double(double x)
{
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string trajectory_csv(const Trajectory & traj)
{
  if (traj.states.empty()) {return "t\n";}
  const int n = static_cast<int>(traj.front().q.size());
  std::string out = "t";
  for (const char * name : {"q", "v", "a", "j"}) {
    for (int i = 0; i < n; ++i) {out += "," + std::string(name) + std::to_string(i);}
  }
  out += "\n";
  for (const auto & s : traj.states) {
    out += format_double(s.t);
    for (const Vec * x : {&s.q, &s.v, &s.a, &s.j}) {
      for (int i = 0; i < n; ++i) {out += "," + format_double((*x)[i]);}
    }
    out += "\n";
  }
  return out;
}

Trajectory parse_trajectory_csv(const std::string & text)
{
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) {throw IoError("trajectory CSV is empty");}
  const std::size_t cols = static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
  if (cols < 5 || (cols - 1) % 4 != 0 || line.rfind("t,", 0) != 0) {
    throw IoError("trajectory CSV header must be t, q.., v.., a.., j..");
  }
  const int n = static_cast<int>((cols - 1) / 4);
  Trajectory traj;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) {continue;}
    std::vector<double> vals;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      try {
        std::size_t used = 0;
        vals.push_back(std::stod(cell, &used));
      } catch (const std::exception &) {
        throw IoError("trajectory CSV row " + std::to_string(row) + ": bad number '" + cell + "'");
      }
    }
    if (vals.size() != cols) {
      throw IoError("trajectory CSV row " + std::to_string(row) + " has the wrong column count");
    }
    CurveState s;
    s.t = vals[0];
    s.q = Eigen::Map<Vec>(vals.data() + 1, n);
    s.v = Eigen::Map<Vec>(vals.data() + 1 + n, n);
    s.a = Eigen::Map<Vec>(vals.data() + 1 + 2 * n, n);
    s.j = Eigen::Map<Vec>(vals.data() + 1 + 3 * n, n);
    traj.states.push_back(std::move(s));
  }
  if (traj.states.size() < 7) {throw IoError("trajectory CSV needs at least 7 rows");}
  const double span = traj.back().t - traj.front().t;
  traj.step = span / static_cast<double>(traj.size() - 1);
  for (std::size_t i = 1; i < traj.size(); ++i) {
    const double expected = traj.front().t + static_cast<double>(i) * traj.step;
    if (std::abs(traj.states[i].t - expected) > 1e-9 * (1.0 + std::abs(span))) {
      throw IoError("trajectory CSV times are not uniformly spaced");
    }
  }
  return traj;
}

std::string read_text_file(const std::string & path)
{
  std::ifstream f(path, std::ios::binary);
  if (!f) {throw IoError("cannot open '" + path + "'");}
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_text_file(const std::string & path, const std::string & text)
{
  std::ofstream f(path, std::ios::binary);
  if (!f) {throw IoError("cannot write '" + path + "'");}
  f << text;
  if (!f) {throw IoError("write to '" + path + "' failed");}
}

Trajectory read_trajectory_csv(const std::string & path)
{
  return parse_trajectory_csv(read_text_file(path));
}

nlohmann::json to_json(const Vec & v)
{
  return std::vector<double>(v.data(), v.data() + v.size());
}

nlohmann::json to_json(const BoundaryData & b)
{
  return {{"q_a", to_json(b.q_a)}, {"v_a", to_json(b.v_a)}, {"q_b", to_json(b.q_b)},
    {"v_b", to_json(b.v_b)}, {"interval", {b.a, b.b}}};
}

nlohmann::json to_json(const ShootingResult & r)
{
  return {{"y", to_json(r.y)}, {"z", to_json(r.z)}, {"residual", r.residual},
    {"jacobian_condition", r.jacobian_condition}, {"iterations", r.iterations},
    {"action", r.action}, {"residual_history", r.residual_history},
    {"step", r.trajectory.step}, {"samples", r.trajectory.size()}};
}

nlohmann::json to_json(const BiconjugateReport & r)
{
  nlohmann::json pts = nlohmann::json::array();
  for (const auto & p : r.points) {
    pts.push_back(
      {{"t2", p.t}, {"sigma_min", p.sigma_min}, {"sigma_ratio", p.sigma_ratio},
        {"witness", {{"d2X", to_json(p.d2X)}, {"d3X", to_json(p.d3X)}}},
        {"witness_residual", p.witness_residual}});
  }
  return {{"t1", r.t1}, {"resolution", r.resolution}, {"threshold", r.threshold},
    {"points", pts}, {"warnings", r.warnings}};
}

nlohmann::json to_json(const IndexReport & r)
{
  return {{"m", r.m}, {"dimension", r.dimension}, {"index", r.index}, {"kernel", r.kernel},
    {"extended_index", r.extended_index}, {"gram_condition", r.gram_condition},
    {"verdict", r.verdict},
    {"lowest_eigenvalues", std::vector<double>(
        r.eigenvalues.begin(),
        r.eigenvalues.begin() + std::min<std::size_t>(10, r.eigenvalues.size()))}};
}

nlohmann::json to_json(const OptimalityReport & r)
{
  nlohmann::json cert = nlohmann::json::array();
  for (const auto & [a, b] : r.certified) {cert.push_back({a, b});}
  return {{"verdict", r.verdict}, {"not_omega_local_minimizer", r.not_minimizer},
    {"candidate", r.candidate}, {"q_local_minimizer", r.q_local_minimizer},
    {"index", to_json(r.index)}, {"biconjugate", to_json(r.scan)},
    {"certified_subintervals", cert}, {"reasons", r.reasons}};
}

nlohmann::json to_json(const OracleComparison & c)
{
  return {{"N", c.N}, {"sup_distance", c.sup_distance}, {"action_discrete", c.action_discrete},
    {"action_shooting", c.action_shooting}, {"action_gap", c.action_gap},
    {"iterations", c.iterations}, {"gradient_norm", c.gradient_norm}};
}

nlohmann::json to_json(const UniquenessReport & u)
{
  nlohmann::json subs = nlohmann::json::array();
  for (const auto & s : u.restrictions) {
    subs.push_back({{"interval", {s.a, s.b}}, {"deviation", s.deviation}, {"converged", s.converged}});
  }
  return {{"restrictions", subs}, {"restriction_ok", u.restriction_ok},
    {"tangent_time", u.tangent_time}, {"tangent_deviation", u.tangent_deviation},
    {"tangent_ok", u.tangent_ok}, {"inconclusive", u.inconclusive}};
}

std::string sweep_csv(const std::vector<double> & lambdas, const std::vector<ShootingResult> & rs)
{
  if (rs.empty()) {return "lambda,J,residual\n";}
  const int n = static_cast<int>(rs.front().y.size());
  std::string out = "lambda";
  for (int i = 0; i < n; ++i) {out += ",y" + std::to_string(i);}
  for (int i = 0; i < n; ++i) {out += ",z" + std::to_string(i);}
  out += ",J,residual\n";
  for (std::size_t k = 0; k < rs.size(); ++k) {
    out += format_double(lambdas[k]);
    for (int i = 0; i < n; ++i) {out += "," + format_double(rs[k].y[i]);}
    for (int i = 0; i < n; ++i) {out += "," + format_double(rs[k].z[i]);}
    out += "," + format_double(rs[k].action) + "," + format_double(rs[k].residual) + "\n";
  }
  return out;
}

}  // namespace cubicplan
