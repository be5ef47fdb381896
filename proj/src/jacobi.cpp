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

#include "cubicplan/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "flow.hpp"

namespace cubicplan
{

namespace
{

struct CurveTensors
{
  CoordTensor r;
  CoordTensor dr;
  CoordTensor d2r;
  bool parallel = true;
};

CurveTensors curve_tensors(const ManifoldChart & chart, const Vec & q)
{
  CurveTensors t;
  t.r = chart.riemann(q);
  t.parallel = chart.parallel_curvature();
  if (!t.parallel) {
    t.dr = chart.nabla_riemann(q);
    t.d2r = chart.nabla2_riemann(q);
  }
  return t;
}

// The three groups of F, acting on X, DX and D^2X respectively.
Vec f_zero(const CurveTensors & t, const CurveState & s, const Vec & X)
{
  const Vec & Y = s.v;
  const Vec & A = s.a;
  const Vec & B = s.j;
  Vec out = contract_riemann(t.r, contract_riemann(t.r, X, Y, Y), Y, Y) +
    contract_riemann(t.r, X, B, Y) + 3.0 * contract_riemann(t.r, X, Y, B) +
    3.0 * contract_riemann(t.r, X, A, A);
  if (!t.parallel) {
    out += contract_nabla2_riemann(t.d2r, Y, Y, X, Y, Y) +
      contract_nabla_riemann(t.dr, A, X, Y, Y) + contract_nabla_riemann(t.dr, X, A, Y, Y) +
      2.0 * contract_nabla_riemann(t.dr, Y, X, A, Y) +
      3.0 * contract_nabla_riemann(t.dr, Y, X, Y, A);
  }
  return out;
}

Vec f_one(const CurveTensors & t, const CurveState & s, const Vec & dX)
{
  Vec out = 4.0 * contract_riemann(t.r, dX, s.v, s.a);
  if (!t.parallel) {out += 2.0 * contract_nabla_riemann(t.dr, s.v, dX, s.v, s.v);}
  return out;
}

Vec f_two(const CurveTensors & t, const CurveState & s, const Vec & d2X)
{
  return 2.0 * contract_riemann(t.r, d2X, s.v, s.v);
}

}  // namespace

FCoefficients f_coefficients(const ManifoldChart & chart, const CurveState & state)
{
  const int n = chart.dim();
  FCoefficients f{Mat::Zero(n, n), Mat::Zero(n, n), Mat::Zero(n, n)};
  if (chart.kind() == CurvatureKind::flat) {return f;}
  const CurveTensors t = curve_tensors(chart, state.q);
  for (int i = 0; i < n; ++i) {
    const Vec e = Vec::Unit(n, i);
    f.F0.col(i) = f_zero(t, state, e);
    f.F1.col(i) = f_one(t, state, e);
    f.F2.col(i) = f_two(t, state, e);
  }
  return f;
}

Vec f_operator(
  const ManifoldChart & chart, const CurveState & state, const Vec & X, const Vec & dX,
  const Vec & d2X)
{
  const CurveTensors t = curve_tensors(chart, state.q);
  return f_zero(t, state, X) + f_one(t, state, dX) + f_two(t, state, d2X);
}

JacobiState jacobi_rhs(
  const ManifoldChart & chart, const Potential & potential, const CurveState & state,
  const JacobiState & field)
{
  JacobiState d;
  d.t = field.t;
  d.X = field.dX;
  d.dX = field.d2X;
  d.d2X = field.d3X;
  d.d3X = -f_operator(chart, state, field.X, field.dX, field.d2X);
  if (!potential.is_zero()) {d.d3X -= potential.hessian_op(state.q, field.X);}
  return d;
}

namespace
{

std::size_t node_of(const Trajectory & traj, double t)
{
  const double x = (t - traj.start_time()) / traj.step;
  const double r = std::round(x);
  if (r < 0 || r > static_cast<double>(traj.size() - 1) || std::abs(x - r) > 1e-6) {
    throw ContractError("time " + std::to_string(t) + " is not a node of the trajectory");
  }
  return static_cast<std::size_t>(r);
}

void check_jets(int n, const JacobiState & s)
{
  if (s.X.size() != n || s.dX.size() != n || s.d2X.size() != n || s.d3X.size() != n) {
    throw ContractError("Jacobi state has the wrong dimension");
  }
}

}  // namespace

std::vector<FieldSamples> propagate_jacobi(
  const ManifoldChart & chart, const Potential & potential, const Trajectory & traj,
  std::size_t node, const std::vector<JacobiState> & initial, bool backward)
{
  if (node >= traj.size()) {throw ContractError("propagate_jacobi: node out of range");}
  const int fields = static_cast<int>(initial.size());
  const detail::AugmentedFlow flow(chart, potential, fields, 0);
  Vec y = flow.pack(traj.states[node]);
  for (int k = 0; k < fields; ++k) {
    check_jets(chart.dim(), initial[k]);
    flow.set_field(y, k, initial[k]);
  }
  const double h = backward ? -traj.step : traj.step;
  const std::size_t count = backward ? node + 1 : traj.size() - node;
  std::vector<FieldSamples> out(fields);
  for (auto & f : out) {
    f.t0 = traj.states[node].t;
    f.step = h;
  }
  auto record = [&](double t) {
      for (int k = 0; k < fields; ++k) {
        const JacobiState s = flow.field(y, k, t);
        const double size = s.X.cwiseAbs().maxCoeff() + s.d3X.cwiseAbs().maxCoeff();
        if (!std::isfinite(size) || size > 1e150) {
          throw NumericalError("Jacobi field overflow near t = " + std::to_string(t));
        }
        out[k].X.push_back(s.X);
        out[k].dX.push_back(s.dX);
        out[k].d2X.push_back(s.d2X);
        out[k].d3X.push_back(s.d3X);
      }
    };
  double t = traj.states[node].t;
  record(t);
  for (std::size_t i = 1; i < count; ++i) {
    flow.step(y, t, h);
    t = traj.states[node].t + static_cast<double>(i) * h;
    record(t);
  }
  return out;
}

FieldSamples propagate_jacobi(
  const ManifoldChart & chart, const Potential & potential, const Trajectory & traj,
  const JacobiState & initial)
{
  return propagate_jacobi(chart, potential, traj, node_of(traj, initial.t), {initial}).front();
}

// --- biconjugate scan --------------------------------------------------------

namespace
{

/// Fundamental bi-Jacobi system started at one node, carrying a parallel
/// orthonormal frame, sampled at every node in one direction.
class FundamentalRun
{
public:
  FundamentalRun(
    const ManifoldChart & chart, const Potential & potential, const Trajectory & traj,
    std::size_t node, bool backward, std::size_t stop_node)
  : chart_(chart), n_(chart.dim()), flow_(chart, potential, 2 * chart.dim(), chart.dim()),
    t1_(traj.states[node].t), h_(backward ? -traj.step : traj.step)
  {
    const int n = n_;
    Vec y = flow_.pack(traj.states[node]);
    e0_ = orthonormalize(chart.metric(traj.states[node].q), Mat::Identity(n, n));
    for (int i = 0; i < n; ++i) {
      JacobiState a{t1_, Vec::Zero(n), Vec::Zero(n), e0_.col(i), Vec::Zero(n)};
      JacobiState b{t1_, Vec::Zero(n), Vec::Zero(n), Vec::Zero(n), e0_.col(i)};
      flow_.set_field(y, i, a);
      flow_.set_field(y, n + i, b);
      y.segment(flow_.vector_offset(i), n) = e0_.col(i);
    }
    const std::size_t count = backward ? node - stop_node + 1 : stop_node - node + 1;
    ys_.reserve(count);
    ys_.push_back(y);
    for (std::size_t i = 1; i < count; ++i) {
      flow_.step(y, t1_ + static_cast<double>(i - 1) * h_, h_);
      ys_.push_back(y);
    }
  }

  std::size_t nodes() const {return ys_.size();}
  double time(std::size_t i) const {return t1_ + static_cast<double>(i) * h_;}
  double t1() const {return t1_;}
  const Mat & e0() const {return e0_;}
  const Vec & node_state(std::size_t i) const {return ys_[i];}

  Vec state_at(double t) const
  {
    const double x = (t - t1_) / h_;
    const double last = static_cast<double>(ys_.size() >= 2 ? ys_.size() - 2 : 0);
    const std::size_t k = static_cast<std::size_t>(std::clamp(std::floor(x), 0.0, last));
    Vec y = ys_[k];
    const double dt = t - time(k);
    if (dt != 0.0) {flow_.step(y, time(k), dt);}
    return y;
  }

  /// Scaled boundary matrix at augmented state y, elapsed |t - t1| = tau.
  Mat boundary(const Vec & y, double tau) const
  {
    const int n = n_;
    const Vec q = y.head(n);
    const Mat g = chart_.metric(q);
    Mat e(n, n);
    for (int i = 0; i < n; ++i) {e.col(i) = y.segment(flow_.vector_offset(i), n);}
    const Mat proj = e.transpose() * g;
    Mat m(2 * n, 2 * n);
    for (int c = 0; c < 2 * n; ++c) {
      const int o = flow_.field_offset(c);
      const double cs = c < n ? 1.0 : 1.0 / tau;
      m.block(0, c, n, 1) = proj * y.segment(o, n) * (cs / (tau * tau));
      m.block(n, c, n, 1) = proj * y.segment(o + n, n) * (cs / tau);
    }
    return m;
  }

  Mat boundary_at(double t) const {return boundary(state_at(t), std::abs(t - t1_));}

  const detail::AugmentedFlow & flow() const {return flow_;}

private:
  const ManifoldChart & chart_;
  int n_;
  detail::AugmentedFlow flow_;
  double t1_;
  double h_;
  Mat e0_;
  std::vector<Vec> ys_;
};

double sigma_ratio(const Mat & m, double * sigma_min = nullptr, Vec * right = nullptr)
{
  Eigen::JacobiSVD<Mat> svd(m, right ? Eigen::ComputeFullV : 0);
  const Vec s = svd.singularValues();
  if (sigma_min) {*sigma_min = s[s.size() - 1];}
  if (right) {*right = svd.matrixV().col(s.size() - 1);}
  return s[0] > 0.0 ? s[s.size() - 1] / s[0] : 0.0;
}

/// Initial (d2X, d3X) of the field spanned by the unit right singular vector.
std::pair<Vec, Vec> witness_jets(const Mat & e0, const Vec & w, double tau)
{
  const int n = static_cast<int>(e0.cols());
  Vec d2 = e0 * w.head(n);
  Vec d3 = e0 * w.tail(n) / tau;
  const double scale = std::sqrt(d2.squaredNorm() + d3.squaredNorm());
  return {d2 / scale, d3 / scale};
}

/// Re-propagates the witness from t1 to t2 and returns
/// (|X(t2)| + |DX(t2)|) / max |X|, in the metric.
double witness_residual(
  const ManifoldChart & chart, const Potential & potential, const FundamentalRun & run,
  const Vec & d2, const Vec & d3, double t2)
{
  const int n = chart.dim();
  const detail::AugmentedFlow flow(chart, potential, 1, 0);
  Vec y = flow.pack(run.flow().unpack(run.node_state(0), run.t1()));
  flow.set_field(y, 0, JacobiState{run.t1(), Vec::Zero(n), Vec::Zero(n), d2, d3});
  const double h = run.time(1) - run.time(0);
  const int full = static_cast<int>(std::floor((t2 - run.t1()) / h + 1e-12));
  double sup = 0.0;
  double t = run.t1();
  for (int i = 0; i < full; ++i) {
    flow.step(y, t, h);
    t = run.t1() + (i + 1) * h;
    const JacobiState f = flow.field(y, 0, t);
    sup = std::max(sup, norm(chart, y.head(n), f.X));
  }
  if (t != t2) {flow.step(y, t, t2 - t);}
  const JacobiState f = flow.field(y, 0, t2);
  const Vec q = y.head(n);
  sup = std::max(sup, norm(chart, q, f.X));
  if (sup == 0.0) {return 0.0;}
  return (norm(chart, q, f.X) + norm(chart, q, f.dX)) / sup;
}

void scan_direction(
  const ManifoldChart & chart, const Potential & potential, const Trajectory & traj,
  std::size_t node, bool backward, const ScanOptions & options, BiconjugateReport & report)
{
  const std::size_t stop = backward ? 0 : traj.size() - 1;
  if (stop == node) {return;}
  const FundamentalRun run(chart, potential, traj, node, backward, stop);
  const std::size_t m = run.nodes();
  std::vector<double> det(m, 0.0), ratio(m, 1.0);
  for (std::size_t i = 1; i < m; ++i) {
    const Mat b = run.boundary(run.node_state(i), std::abs(run.time(i) - run.t1()));
    det[i] = b.determinant();
    ratio[i] = sigma_ratio(b);
  }

  std::vector<double> hits;
  auto det_at = [&](double t) {return run.boundary_at(t).determinant();};
  auto ratio_at = [&](double t) {return sigma_ratio(run.boundary_at(t));};
  for (std::size_t i = 1; i + 1 < m; ++i) {
    if (det[i] == 0.0) {
      hits.push_back(run.time(i));
    } else if ((det[i] > 0) != (det[i + 1] > 0) && det[i + 1] != 0.0) {
      double lo = run.time(i), hi = run.time(i + 1);
      double flo = det[i];
      for (int it = 0; it < 200 && std::abs(hi - lo) > 1e-13 * (1.0 + std::abs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = det_at(mid);
        if ((fm > 0) == (flo > 0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      hits.push_back(0.5 * (lo + hi));
    }
  }
  if (m > 1 && det[m - 1] == 0.0) {hits.push_back(run.time(m - 1));}
  const double gold = 0.5 * (std::sqrt(5.0) - 1.0);
  for (std::size_t i = 1; i < m; ++i) {
    const bool left = i == 1 || ratio[i] < ratio[i - 1];
    const bool right = i + 1 == m || ratio[i] <= ratio[i + 1];
    if (!left || !right || ratio[i] > 1e-2) {continue;}
    double a = run.time(i - 1 > 0 ? i - 1 : 1);
    double b = run.time(i + 1 < m ? i + 1 : m - 1);
    double c = b - gold * (b - a), d = a + gold * (b - a);
    double fc = ratio_at(c), fd = ratio_at(d);
    for (int it = 0; it < 200 && std::abs(b - a) > 1e-13 * (1.0 + std::abs(b)); ++it) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - gold * (b - a);
        fc = ratio_at(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + gold * (b - a);
        fd = ratio_at(d);
      }
    }
    const double tm = fc < fd ? c : d;
    if (std::min(fc, fd) <= options.threshold) {hits.push_back(tm);}
  }

  std::sort(hits.begin(), hits.end());
  const double merge = 10.0 * options.time_tolerance + 1e-9;
  std::vector<double> events;
  for (double t : hits) {
    if (events.empty() || std::abs(t - events.back()) > merge) {events.push_back(t);}
  }
  for (std::size_t k = 1; k < events.size(); ++k) {
    if (std::abs(events[k] - events[k - 1]) < 3.0 * traj.step) {
      report.warnings.push_back(
        "biconjugate times " + std::to_string(events[k - 1]) + " and " +
        std::to_string(events[k]) + " are closer than three grid steps; refine the grid");
    }
  }
  for (double t : events) {
    const double tau = std::abs(t - run.t1());
    BiconjugatePoint p;
    p.t = t;
    Vec w;
    p.sigma_ratio = sigma_ratio(run.boundary_at(t), &p.sigma_min, &w);
    std::tie(p.d2X, p.d3X) = witness_jets(run.e0(), w, tau);
    p.witness_residual = witness_residual(chart, potential, run, p.d2X, p.d3X, t);
    report.points.push_back(p);
  }
}

}  // namespace

BiconjugateReport biconjugate_scan(
  const ManifoldChart & chart, const Potential & potential, const Trajectory & traj, double t1,
  const ScanOptions & options)
{
  if (traj.size() < 2) {throw ContractError("biconjugate_scan: trajectory too short");}
  if (t1 < traj.start_time() - 1e-12 || t1 > traj.end_time() + 1e-12) {
    throw ContractError("biconjugate_scan: t1 outside the trajectory interval");
  }
  const double x = (t1 - traj.start_time()) / traj.step;
  const std::size_t node = static_cast<std::size_t>(
    std::clamp(std::round(x), 0.0, static_cast<double>(traj.size() - 1)));
  BiconjugateReport report;
  report.t1 = traj.states[node].t;
  report.resolution = traj.step;
  report.threshold = options.threshold;
  if (std::abs(x - std::round(x)) > 1e-6) {
    report.warnings.push_back("t1 rounded to the nearest grid node");
  }
  scan_direction(chart, potential, traj, node, false, options, report);
  if (options.backward) {scan_direction(chart, potential, traj, node, true, options, report);}
  std::sort(
    report.points.begin(), report.points.end(),
    [](const BiconjugatePoint & a, const BiconjugatePoint & b) {return a.t < b.t;});
  return report;
}

// --- negative direction ------------------------------------------------------

namespace
{

struct Bump
{
  double center;
  double delta;
  Vec value_coeffs;
  Vec slope_coeffs;

  // Coefficients (order 0..2) contributed at time t.
  void add(double t, Mat & c) const
  {
    const double u = t - center;
    const double s = std::abs(u) / delta;
    if (s >= 1.0) {return;}
    const double sg = u < 0 ? -1.0 : 1.0;
    const double p1 = 30 * s * s - 60 * s * s * s + 30 * s * s * s * s;
    const double p2 = 60 * s - 180 * s * s + 120 * s * s * s;
    const double phi = 1.0 - (10 * s * s * s - 15 * s * s * s * s + 6 * std::pow(s, 5));
    const double dphi = -p1 * sg / delta;
    const double d2phi = -p2 / (delta * delta);
    const double g = s - 6 * std::pow(s, 3) + 8 * std::pow(s, 4) - 3 * std::pow(s, 5);
    const double g1 = 1 - 18 * s * s + 32 * std::pow(s, 3) - 15 * std::pow(s, 4);
    const double g2 = -36 * s + 96 * s * s - 60 * std::pow(s, 3);
    const double psi = sg * delta * g;
    const double dpsi = g1;
    const double d2psi = sg * g2 / delta;
    c.col(0) += phi * value_coeffs + psi * slope_coeffs;
    c.col(1) += dphi * value_coeffs + dpsi * slope_coeffs;
    c.col(2) += d2phi * value_coeffs + d2psi * slope_coeffs;
  }
};

struct PieceSample
{
  double t;
  detail::NodeForm form;
  Vec X, dX, d2X;
  Vec Y, dY, d2Y;
  Mat frame;
};

}  // namespace

NegativeDirection negative_direction(
  const ManifoldChart & chart, const Potential & potential, const Trajectory & traj, double t1,
  double t2, double delta, double epsilon)
{
  const double t0 = traj.start_time();
  const double T = traj.end_time();
  if (!(t0 <= t1 && t1 < t2 && t2 < T)) {
    throw ContractError("negative_direction: need start <= t1 < t2 < end");
  }
  const int n = chart.dim();
  const std::size_t node = node_of(traj, t1);

  // Witness from the fundamental system at t2.
  const std::size_t stop = std::min(
    traj.size() - 1, static_cast<std::size_t>(std::ceil((t2 - t0) / traj.step)));
  const FundamentalRun run(chart, potential, traj, node, false, stop);
  Vec w;
  double sig = 0.0;
  const double rho = sigma_ratio(run.boundary_at(t2), &sig, &w);
  if (rho > 1e-4) {
    throw ContractError(
            "negative_direction: t1 and t2 are not biconjugate (sigma ratio " +
            std::to_string(rho) + ")");
  }
  const auto [wd2, wd3] = witness_jets(run.e0(), w, t2 - t1);

  auto evaluate = [&](double dl) {
      std::vector<double> cuts = {t0, t1, t2, T};
      if (t1 > t0) {
        cuts.push_back(t1 - dl);
        cuts.push_back(t1 + dl);
      }
      cuts.push_back(t2 - dl);
      cuts.push_back(t2 + dl);
      std::sort(cuts.begin(), cuts.end());
      cuts.erase(
        std::unique(cuts.begin(), cuts.end(), [](double a, double b) {return b - a < 1e-14;}),
        cuts.end());

      const detail::AugmentedFlow flow(chart, potential, 1, n);
      Vec y = flow.pack(traj.front());
      const Mat e0 = orthonormalize(chart.metric(traj.front().q), Mat::Identity(n, n));
      for (int i = 0; i < n; ++i) {y.segment(flow.vector_offset(i), n) = e0.col(i);}

      std::vector<Bump> bumps;
      std::vector<std::vector<PieceSample>> pieces;
      for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
        const double a = cuts[c], b = cuts[c + 1];
        if (std::abs(a - t1) < 1e-14) {
          flow.set_field(y, 0, JacobiState{t1, Vec::Zero(n), Vec::Zero(n), wd2, wd3});
        }
        if (std::abs(a - t2) < 1e-14) {
          flow.set_field(
            y, 0, JacobiState{t2, Vec::Zero(n), Vec::Zero(n), Vec::Zero(n), Vec::Zero(n)});
        }
        const double target = std::min(traj.step, dl / 20.0);
        int steps = std::max(8, static_cast<int>(std::ceil((b - a) / target)));
        steps += steps % 2;
        const double hs = (b - a) / steps;
        std::vector<PieceSample> piece;
        for (int i = 0; i <= steps; ++i) {
          const double t = i == steps ? b : a + i * hs;
          if (i > 0) {flow.step(y, a + (i - 1) * hs, (i == steps ? b - (a + (i - 1) * hs) : hs));}
          const CurveState s = flow.unpack(y, t);
          PieceSample p;
          p.t = t;
          p.form = detail::node_form(chart, potential, s);
          const JacobiState f = flow.field(y, 0, t);
          p.X = f.X;
          p.dX = f.dX;
          p.d2X = f.d2X;
          Mat e(n, n);
          for (int k = 0; k < n; ++k) {e.col(k) = y.segment(flow.vector_offset(k), n);}
          if (std::abs(t - t1) < 1e-14 && i == 0) {
            const Mat proj = e.transpose() * p.form.g;
            bumps.push_back({t1, dl, proj * (-f.d3X), proj * f.d2X});
            if (t1 <= t0) {bumps.pop_back();}
          }
          if (std::abs(t - t2) < 1e-14 && i == steps) {
            const Mat proj = e.transpose() * p.form.g;
            bumps.push_back({t2, dl, proj * f.d3X, proj * (-f.d2X)});
          }
          p.frame = e;
          piece.push_back(std::move(p));
        }
        pieces.push_back(std::move(piece));
      }
      for (auto & piece : pieces) {
        for (auto & p : piece) {
          const Mat & e = p.frame;
          Mat c = Mat::Zero(n, 3);
          for (const auto & bmp : bumps) {bmp.add(p.t, c);}
          p.Y = e * c.col(0);
          p.dY = e * c.col(1);
          p.d2Y = e * c.col(2);
        }
      }
      return pieces;
    };

  auto integrate = [](const std::vector<std::vector<PieceSample>> & pieces, auto && integrand) {
      double total = 0.0;
      for (const auto & piece : pieces) {
        std::vector<double> f;
        f.reserve(piece.size());
        for (const auto & p : piece) {f.push_back(integrand(p));}
        total += simpson(f, piece[1].t - piece[0].t);
      }
      return total;
    };
  auto form = [](const PieceSample & p, const Vec & A, const Vec & dA, const Vec & d2A,
    const Vec & B, const Vec & d2B) {
      return detail::cubic_integrand(p.form, A, dA, d2A, B, d2B) +
             detail::potential_integrand(p.form, A, B);
    };

  std::vector<double> deltas;
  if (delta > 0.0) {
    deltas.push_back(delta);
  } else {
    for (double c = 0.1; c > 0.1 / 64.0; c *= 0.5) {deltas.push_back(c * (t2 - t1));}
  }
  std::vector<double> epsilons;
  if (epsilon >= 0.0) {
    epsilons.push_back(epsilon);
  } else {
    for (double e = 1e-1; e > 0.5e-4; e *= 0.1) {epsilons.push_back(e);}
  }

  for (double dl : deltas) {
    if ((t1 > t0 && t1 - dl <= t0) || t2 + dl >= T || t1 + dl >= t2 - dl) {continue;}
    const auto pieces = evaluate(dl);
    NegativeDirection out;
    out.delta = dl;
    out.i_xx = integrate(pieces, [&](const PieceSample & p) {
          return form(p, p.X, p.dX, p.d2X, p.X, p.d2X);
        });
    out.i_xy = integrate(pieces, [&](const PieceSample & p) {
          return form(p, p.X, p.dX, p.d2X, p.Y, p.d2Y);
        });
    out.i_yx = integrate(pieces, [&](const PieceSample & p) {
          return form(p, p.Y, p.dY, p.d2Y, p.X, p.d2X);
        });
    out.i_yy = integrate(pieces, [&](const PieceSample & p) {
          return form(p, p.Y, p.dY, p.d2Y, p.Y, p.d2Y);
        });
    for (double eps : epsilons) {
      const double value = integrate(pieces, [&](const PieceSample & p) {
            const Vec U = p.X + eps * p.Y, dU = p.dX + eps * p.dY, d2U = p.d2X + eps * p.d2Y;
            return form(p, U, dU, d2U, U, d2U);
          });
      const bool accept = eps == 0.0 || value + std::abs(out.i_xx) < 0.0;
      if (!accept) {continue;}
      out.epsilon = eps;
      out.value = value;
      for (const auto & piece : pieces) {
        for (const auto & p : piece) {
          out.times.push_back(p.t);
          out.U.push_back(p.X + eps * p.Y);
        }
      }
      return out;
    }
  }
  throw ConstructionFailure(
          "negative_direction: no (delta, eps) on the search grid gave I(U, U) < 0");
}

}  // namespace cubicplan
