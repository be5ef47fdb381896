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

#include "cubicplan/commands.hpp"

#include <filesystem>
#include <ostream>

#include "cubicplan/io.hpp"
#include "cubicplan/scenario.hpp"

namespace cubicplan
{

namespace
{

std::string out_path(const CommandOptions & o, const std::string & name)
{
  return (std::filesystem::path(o.out) / name).string();
}

Scenario scenario_for(const CommandOptions & o)
{
  if (o.config.empty()) {throw ConfigError("--config is required");}
  Scenario s = load_scenario(o.config);
  if (o.step) {s.set_step(*o.step);}
  if (o.seed) {s.seed = *o.seed;}
  return s;
}

ShootingResult plan(const Scenario & s)
{
  if (s.seeds <= 1) {return solve_bvp(*s.chart, *s.potential, s.boundary, std::nullopt, s.solver);}
  auto all = multi_seed_solve(*s.chart, *s.potential, s.boundary, s.seeds, s.seed, s.solver);
  if (all.empty()) {
    throw NonConvergenceError("no seed converged", Vec(), Vec(), INFINITY);
  }
  return all.front();
}

int cmd_plan(const CommandOptions & o, std::ostream & out)
{
  const Scenario s = scenario_for(o);
  nlohmann::json report;
  report["manifold"] = s.manifold;
  report["potential"] = s.potential->to_json();
  report["boundary"] = to_json(s.boundary);
  if (s.seeds > 1) {
    const auto all = multi_seed_solve(*s.chart, *s.potential, s.boundary, s.seeds, s.seed, s.solver);
    if (all.empty()) {throw NonConvergenceError("no seed converged", Vec(), Vec(), INFINITY);}
    nlohmann::json list = nlohmann::json::array();
    for (const auto & r : all) {list.push_back(to_json(r));}
    report["solutions"] = list;
    report["solution"] = to_json(all.front());
    write_text_file(out_path(o, "trajectory.csv"), trajectory_csv(all.front().trajectory));
  } else {
    const ShootingResult r = solve_bvp(*s.chart, *s.potential, s.boundary, std::nullopt, s.solver);
    report["solution"] = to_json(r);
    write_text_file(out_path(o, "trajectory.csv"), trajectory_csv(r.trajectory));
  }
  write_text_file(out_path(o, "solve.json"), report.dump(2) + "\n");
  out << "plan: converged, action " << format_double(report["solution"]["action"].get<double>())
      << "\n";
  return kExitOk;
}

Trajectory trajectory_for(const CommandOptions & o, const Scenario & s)
{
  if (o.trajectory) {
    Trajectory t = read_trajectory_csv(*o.trajectory);
    if (t.front().q.size() != s.chart->dim()) {
      throw ConfigError("trajectory dimension does not match the manifold");
    }
    t.chart_id = s.chart->id();
    t.potential_id = s.potential->id();
    return t;
  }
  return plan(s).trajectory;
}

int cmd_verify(const CommandOptions & o, std::ostream & out)
{
  const Scenario s = scenario_for(o);
  const Trajectory traj = trajectory_for(o, s);
  const OptimalityReport r = verdict(*s.chart, *s.potential, traj, s.verify);
  nlohmann::json report = to_json(r);
  if (r.candidate && s.check_uniqueness) {
    UniquenessOptions uo;
    uo.seed = s.seed;
    report["uniqueness"] = to_json(check_uniqueness_props(*s.chart, *s.potential, traj, uo));
  }
  write_text_file(out_path(o, "verdict.json"), report.dump(2) + "\n");
  out << "verify: " << r.verdict << "\n";
  return r.not_minimizer ? kExitNotMinimizer : kExitOk;
}

int cmd_scan(const CommandOptions & o, std::ostream & out)
{
  const Scenario s = scenario_for(o);
  const Trajectory traj = trajectory_for(o, s);
  const double t1 = o.t1 ? *o.t1 : s.scan_t1;
  ScanOptions so = s.verify.scan;
  const BiconjugateReport r = biconjugate_scan(*s.chart, *s.potential, traj, t1, so);
  write_text_file(out_path(o, "biconjugate.json"), to_json(r).dump(2) + "\n");
  out << "scan: " << r.points.size() << " biconjugate time(s)\n";
  return kExitOk;
}

int cmd_sweep(const CommandOptions & o, std::ostream & out)
{
  const Scenario s = scenario_for(o);
  std::vector<double> lambdas = s.sweep_lambda;
  if (lambdas.empty()) {lambdas = {0.0, 0.25, 0.5, 0.75, 1.0};}
  const auto rs = continuation_sweep(*s.chart, s.potential, s.boundary, lambdas, s.solver);
  write_text_file(out_path(o, "sweep.csv"), sweep_csv(lambdas, rs));
  out << "sweep: " << rs.size() << " solves\n";
  return kExitOk;
}

int cmd_oracle(const CommandOptions & o, std::ostream & out)
{
  const Scenario s = scenario_for(o);
  const Trajectory traj = trajectory_for(o, s);
  const OracleComparison c = compare_with_shooting(
    *s.chart, *s.potential, s.boundary, traj, s.oracle_N);
  write_text_file(out_path(o, "comparison.json"), to_json(c).dump(2) + "\n");
  out << "oracle-compare: sup distance " << format_double(c.sup_distance) << ", action gap "
      << format_double(c.action_gap) << "\n";
  return kExitOk;
}

}  // namespace

int run_command(
  const std::string & command, const CommandOptions & options, std::ostream & out,
  std::ostream & err)
{
  try {
    if (!std::filesystem::is_directory(options.out)) {
      std::error_code ec;
      std::filesystem::create_directories(options.out, ec);
      if (ec) {throw IoError("cannot create output directory '" + options.out + "'");}
    }
    if (command == "plan") {return cmd_plan(options, out);}
    if (command == "verify") {return cmd_verify(options, out);}
    if (command == "scan") {return cmd_scan(options, out);}
    if (command == "sweep") {return cmd_sweep(options, out);}
    if (command == "oracle-compare") {return cmd_oracle(options, out);}
    err << "error: unknown command '" << command << "'\n";
    return kExitConfig;
  } catch (const ConfigError & e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const IoError & e) {
    err << "I/O error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ContractError & e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NonConvergenceError & e) {
    err << "solver: " << e.what() << "\n";
    return kExitNonConvergence;
  } catch (const CriticalBiexpError & e) {
    err << "solver: " << e.what() << "\n";
    return kExitNonConvergence;
  } catch (const ChartEscapeError & e) {
    err << "chart escape at t = " << format_double(e.escape_time()) << ": " << e.what() << "\n";
    return kExitChartEscape;
  } catch (const DomainError & e) {
    err << "chart domain: " << e.what() << "\n";
    return kExitChartEscape;
  } catch (const std::exception & e) {
    err << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace cubicplan
