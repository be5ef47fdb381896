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

#include "cubicplan/scenario.hpp"

#include <cmath>
#include <filesystem>
#include <set>

#include "cubicplan/io.hpp"

namespace cubicplan
{

namespace
{

void only_keys(const nlohmann::json & j, const std::string & where, std::set<std::string> keys)
{
  if (!j.is_object()) {throw ConfigError(where + " must be an object");}
  for (const auto & item : j.items()) {
    if (!keys.count(item.key())) {
      throw ConfigError("unknown key '" + item.key() + "' in " + where);
    }
  }
}

Vec vec_at(const nlohmann::json & j, const char * key, int n, const std::string & where)
{
  if (!j.contains(key)) {throw ConfigError(where + "." + key + " is required");}
  const auto & v = j.at(key);
  if (!v.is_array() || static_cast<int>(v.size()) != n) {
    throw ConfigError(where + "." + key + " must be an array of " + std::to_string(n) + " numbers");
  }
  Vec out(n);
  for (int i = 0; i < n; ++i) {
    if (!v[i].is_number()) {throw ConfigError(where + "." + key + " must hold numbers");}
    out[i] = v[i].get<double>();
  }
  return out;
}

std::pair<int, int> line_column(const std::string & text, std::size_t byte)
{
  int line = 1, column = 1;
  for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

void Scenario::set_step(double h)
{
  if (!(h > 0.0) || !std::isfinite(h)) {throw ConfigError("step must be positive");}
  const double T = boundary.duration();
  solver.steps = std::max(6, static_cast<int>(std::ceil(T / h - 1e-9)));
  step = T / solver.steps;
}

Scenario parse_scenario(const std::string & text, const std::string & base_dir)
{
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error & e) {
    const auto [line, column] = line_column(text, e.byte);
    throw ConfigError(
            "config is not valid JSON (line " + std::to_string(line) + ", column " +
            std::to_string(column) + "): " + e.what(), line, column);
  }
  Scenario s;
  try {
    only_keys(
      j, "config",
      {"manifold", "potential", "boundary", "interval", "step", "solver", "verify", "scan",
        "sweep", "oracle", "seed"});
    if (!j.contains("manifold")) {throw ConfigError("config.manifold is required");}
    s.manifold = j.at("manifold").get<std::string>();
    if (s.manifold.rfind("numeric:", 0) == 0) {
      std::filesystem::path p(s.manifold.substr(8));
      if (p.is_relative()) {p = std::filesystem::path(base_dir) / p;}
      s.chart = make_numeric_chart_from_json_text(read_text_file(p.string()), s.manifold);
    } else {
      s.chart = make_chart(s.manifold);
    }
    const int n = s.chart->dim();

    s.potential_config = j.value("potential", nlohmann::json{{"type", "zero"}});
    s.potential = potential_from_json(s.chart, s.potential_config);

    if (!j.contains("boundary")) {throw ConfigError("config.boundary is required");}
    const auto & b = j.at("boundary");
    only_keys(b, "boundary", {"q_a", "v_a", "q_b", "v_b"});
    s.boundary.q_a = vec_at(b, "q_a", n, "boundary");
    s.boundary.v_a = vec_at(b, "v_a", n, "boundary");
    s.boundary.q_b = vec_at(b, "q_b", n, "boundary");
    s.boundary.v_b = vec_at(b, "v_b", n, "boundary");
    const auto interval = j.value("interval", std::vector<double>{0.0, 1.0});
    if (interval.size() != 2 || !(interval[1] > interval[0])) {
      throw ConfigError("interval must be [a, b] with b > a");
    }
    s.boundary.a = interval[0];
    s.boundary.b = interval[1];

    if (j.contains("solver")) {
      const auto & o = j.at("solver");
      only_keys(o, "solver", {"max_iterations", "tolerance", "seeds", "max_backtracks"});
      s.solver.max_iterations = o.value("max_iterations", s.solver.max_iterations);
      s.solver.tolerance = o.value("tolerance", s.solver.tolerance);
      s.solver.max_backtracks = o.value("max_backtracks", s.solver.max_backtracks);
      s.seeds = o.value("seeds", 1);
      if (s.seeds < 1 || s.solver.max_iterations < 1 || !(s.solver.tolerance > 0)) {
        throw ConfigError("solver options out of range");
      }
    }
    s.set_step(j.value("step", s.boundary.duration() / 2000.0));

    if (j.contains("verify")) {
      const auto & o = j.at("verify");
      only_keys(o, "verify", {"galerkin_dimension", "uniqueness", "threshold"});
      s.verify.galerkin_dimension = o.value("galerkin_dimension", 120);
      s.verify.scan.threshold = o.value("threshold", 1e-8);
      s.check_uniqueness = o.value("uniqueness", true);
    }
    if (j.contains("scan")) {
      only_keys(j.at("scan"), "scan", {"t1"});
      s.scan_t1 = j.at("scan").value("t1", s.boundary.a);
    } else {
      s.scan_t1 = s.boundary.a;
    }
    if (j.contains("sweep")) {
      only_keys(j.at("sweep"), "sweep", {"lambda"});
      s.sweep_lambda = j.at("sweep").at("lambda").get<std::vector<double>>();
    }
    if (j.contains("oracle")) {
      only_keys(j.at("oracle"), "oracle", {"N"});
      s.oracle_N = j.at("oracle").value("N", 400);
      if (s.oracle_N < 6) {throw ConfigError("oracle.N must be at least 6");}
    }
    s.seed = j.value("seed", static_cast<std::uint64_t>(7));
  } catch (const nlohmann::json::exception & e) {
    throw ConfigError(std::string("config has a value of the wrong type: ") + e.what());
  } catch (const ContractError & e) {
    throw ConfigError(e.what());
  } catch (const IoError & e) {
    throw ConfigError(e.what());
  }
  return s;
}

Scenario load_scenario(const std::string & path)
{
  const std::string text = read_text_file(path);
  const auto dir = std::filesystem::path(path).parent_path();
  return parse_scenario(text, dir.empty() ? "." : dir.string());
}

}  // namespace cubicplan
