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

#include "cubicplan/index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cubicplan/bspline.hpp"
#include "flow.hpp"

namespace cubicplan
{

IndexForm::IndexForm(
  const ManifoldChart & chart, const Potential & potential, const Trajectory & traj)
: traj_(traj), nodes_(std::make_unique<std::vector<detail::NodeForm>>())
{
  nodes_->reserve(traj.size());
  for (const auto & s : traj.states) {nodes_->push_back(detail::node_form(chart, potential, s));}
}

IndexForm::~IndexForm() = default;
IndexForm::IndexForm(IndexForm &&) noexcept = default;

void IndexForm::check(const AdmissibleField & X, const AdmissibleField & Y) const
{
  if (X.size() != traj_.size() || Y.size() != traj_.size()) {
    throw ContractError("index form: field grid does not match the trajectory");
  }
}

IndexFormParts IndexForm::decompose(const AdmissibleField & X, const AdmissibleField & Y) const
{
  check(X, Y);
  const auto & x = X.samples();
  const auto & y = Y.samples();
  const std::size_t m = traj_.size();
  std::vector<double> c(m), ps(m), pa(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto & nf = (*nodes_)[i];
    c[i] = detail::cubic_integrand(nf, x.X[i], x.dX[i], x.d2X[i], y.X[i], y.d2X[i]);
    const double yx = detail::potential_integrand(nf, x.X[i], y.X[i]);
    const double xy = detail::potential_integrand(nf, y.X[i], x.X[i]);
    ps[i] = 0.5 * (yx + xy);
    pa[i] = 0.5 * (yx - xy);
  }
  return {simpson(c, traj_.step), simpson(ps, traj_.step), simpson(pa, traj_.step)};
}

double IndexForm::operator()(const AdmissibleField & X, const AdmissibleField & Y) const
{
  check(X, Y);
  const auto & x = X.samples();
  const auto & y = Y.samples();
  std::vector<double> f(traj_.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto & nf = (*nodes_)[i];
    f[i] = detail::cubic_integrand(nf, x.X[i], x.dX[i], x.d2X[i], y.X[i], y.d2X[i]) +
      detail::potential_integrand(nf, x.X[i], y.X[i]);
  }
  return simpson(f, traj_.step);
}

double index_form(
  const ManifoldChart & chart, const Potential & potential, const Trajectory & traj,
  const AdmissibleField & X, const AdmissibleField & Y)
{
  return IndexForm(chart, potential, traj)(X, Y);
}

IndexFormParts decompose(
  const ManifoldChart & chart, const Potential & potential, const Trajectory & traj,
  const AdmissibleField & X, const AdmissibleField & Y)
{
  return IndexForm(chart, potential, traj).decompose(X, Y);
}

SecondVariation second_variation_fd(
  const ManifoldChart & chart, const Potential & potential, const Trajectory & traj,
  const AdmissibleField & X, const AdmissibleField & Y, double eps)
{
  if (!(eps > 0.0)) {throw ContractError("second_variation_fd: eps must be positive");}
  const auto & x = X.samples().X;
  const auto & y = Y.samples().X;
  if (x.size() != traj.size() || y.size() != traj.size()) {
    throw ContractError("second_variation_fd: field grid does not match the trajectory");
  }
  auto J = [&](double r, double s) {
      std::vector<Vec> w(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) {w[i] = r * x[i] + s * y[i];}
      return varied_action(chart, potential, traj, w);
    };
  SecondVariation out;
  const double pp = J(eps, eps), pm = J(eps, -eps), mp = J(-eps, eps), mm = J(-eps, -eps);
  out.value = (pp - pm - mp + mm) / (4.0 * eps * eps);
  const double scale = std::max({std::abs(pp), std::abs(pm), std::abs(mp), std::abs(mm)});
  out.noise = 4.0 * std::numeric_limits<double>::epsilon() * scale * traj.size() /
    (4.0 * eps * eps);
  if (out.noise > 1e-4 * (1.0 + std::abs(out.value))) {
    out.warning = "eps is small enough for roundoff to dominate (noise ~ " +
      std::to_string(out.noise) + ")";
  }
  return out;
}

IndexReport extended_index(
  const IndexForm & form, const std::vector<Mat> & frame, int m, double tolerance)
{
  if (m < 1) {throw ContractError("extended_index: m must be at least 1");}
  const Trajectory & traj = form.trajectory();
  if (frame.size() != traj.size()) {throw ContractError("extended_index: frame grid mismatch");}
  const int n = static_cast<int>(frame.front().cols());
  const int dim = n * m;
  const AdmissibleBasis basis(traj.start_time(), traj.end_time(), m);
  Mat A = Mat::Zero(dim, dim);
  Mat gram = Mat::Zero(m, m);
  const std::size_t nodes = traj.size();
  // Composite Simpson weights, 3/8 on the tail for an odd interval count.
  std::vector<double> w(nodes, 0.0);
  {
    std::vector<double> unit(nodes, 0.0);
    for (std::size_t i = 0; i < nodes; ++i) {
      unit[i] = 1.0;
      w[i] = simpson(unit, traj.step);
      unit[i] = 0.0;
    }
  }
  for (std::size_t p = 0; p < nodes; ++p) {
    int first = 0;
    const Mat loc = basis.local(traj.states[p].t, &first);
    const auto & nf = form.nodes()[p];
    const Mat & e = frame[p];
    const Mat egt = e.transpose() * nf.g;
    const Mat c0 = egt * (nf.f.F0 + nf.H) * e;
    const Mat c1 = egt * nf.f.F1 * e;
    const Mat c2 = egt * nf.f.F2 * e;
    const int cnt = static_cast<int>(loc.cols());
    for (int a = 0; a < cnt; ++a) {
      for (int b = 0; b < cnt; ++b) {
        const double xa = loc(0, a), da = loc(1, a), dda = loc(2, a);
        const double xb = loc(0, b), db = loc(1, b), ddb = loc(2, b);
        gram(first + a, first + b) += w[p] * (dda * ddb + da * db + xa * xb);
        // I(xi_a e_i, xi_b e_j) sits at row (a, i), column (b, j).
        const Mat block = w[p] * (xb * (xa * c0 + da * c1 + dda * c2));
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) {
            double v = block(j, i);
            if (i == j) {v += w[p] * dda * ddb;}
            A((first + a) * n + i, (first + b) * n + j) += v;
          }
        }
      }
    }
  }
  const Mat sym = 0.5 * (A + A.transpose());
  Mat G = Mat::Zero(dim, dim);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      for (int i = 0; i < n; ++i) {G(a * n + i, b * n + i) = gram(a, b);}
    }
  }
  const Eigen::SelfAdjointEigenSolver<Mat> gsolve(gram);
  const double gmin = gsolve.eigenvalues().minCoeff();
  const double gmax = gsolve.eigenvalues().maxCoeff();
  IndexReport out;
  out.m = m;
  out.dimension = dim;
  out.gram_condition = gmin > 0 ? gmax / gmin : std::numeric_limits<double>::infinity();
  if (!(out.gram_condition <= 1e12)) {
    throw BasisError(
            "extended_index: basis Gram matrix is ill-conditioned (" +
            std::to_string(out.gram_condition) + ")");
  }
  const Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(sym, G, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {throw NumericalError("extended_index: eigensolver failed");}
  const Vec ev = es.eigenvalues();
  out.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
  for (double l : out.eigenvalues) {
    if (l < -tolerance) {++out.index;} else if (std::abs(l) <= tolerance) {++out.kernel;}
  }
  out.extended_index = out.index + out.kernel;
  out.verdict = out.index > 0 ? "indefinite" :
    (out.kernel > 0 ? "semidefinite_with_kernel" : "positive_definite");
  return out;
}

IndexReport extended_index(
  const ManifoldChart & chart, const Potential & potential, const Trajectory & traj, int m,
  double tolerance)
{
  const IndexForm form(chart, potential, traj);
  return extended_index(form, trajectory_frame(chart, traj), m, tolerance);
}

OptimalityReport verdict(
  const ManifoldChart & chart, const Potential & potential, const Trajectory & traj,
  const VerdictOptions & options)
{
  OptimalityReport out;
  const double a = traj.start_time();
  const double b = traj.end_time();
  ScanOptions scan = options.scan;
  scan.backward = false;
  out.scan = biconjugate_scan(chart, potential, traj, a, scan);
  const int n = chart.dim();
  const int m = (options.galerkin_dimension + n - 1) / n;
  out.index = extended_index(chart, potential, traj, m);

  double first_interior = b;
  for (const auto & p : out.scan.points) {
    if (p.t > a + 1e-9 && p.t < b - 1e-6 * (b - a)) {
      first_interior = std::min(first_interior, p.t);
    }
  }
  if (first_interior < b) {
    out.not_minimizer = true;
    out.reasons.push_back(
      "biconjugate pair (" + std::to_string(a) + ", " + std::to_string(first_interior) +
      ") inside the interval");
  }
  if (out.index.index > 0) {
    out.not_minimizer = true;
    out.reasons.push_back(
      "index form has " + std::to_string(out.index.index) + " negative directions");
  }
  double certified_end = b;
  for (const auto & p : out.scan.points) {
    if (p.t > a + 1e-9) {certified_end = std::min(certified_end, p.t);}
  }
  out.certified.emplace_back(a, certified_end);
  if (out.not_minimizer) {
    out.verdict = "not an Omega-local minimizer";
  } else if (out.index.kernel == 0) {
    out.candidate = true;
    out.verdict = "second-order nondegenerate candidate";
  } else {
    out.verdict = "degenerate: index form has a kernel";
    out.reasons.push_back(
      "index form has " + std::to_string(out.index.kernel) + " near-zero directions");
  }
  return out;
}

}  // namespace cubicplan
