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

#include <sstream>

#include "cubicplan/geometry.hpp"

namespace cubicplan
{

const char * to_string(CurvatureKind kind)
{
  switch (kind) {
    case CurvatureKind::flat: return "flat";
    case CurvatureKind::constant_curvature: return "constant_curvature";
    case CurvatureKind::lie_group_so3: return "lie_group_so3";
    case CurvatureKind::generic_numeric: return "generic_numeric";
  }
  return "unknown";
}

CoordTensor ManifoldChart::nabla_riemann(const Vec & x) const
{
  require_inside(x, "nabla_riemann");
  return CoordTensor(dim(), 5);
}

CoordTensor ManifoldChart::nabla2_riemann(const Vec & x) const
{
  require_inside(x, "nabla2_riemann");
  return CoordTensor(dim(), 6);
}

double ManifoldChart::distance(const Vec & x, const Vec & y) const
{
  require_inside(x, "distance");
  require_inside(y, "distance");
  Vec v = log_map(*this, x, y);
  return std::sqrt(std::max(0.0, v.dot(metric(x) * v)));
}

void ManifoldChart::require_inside(const Vec & x, std::string_view what) const
{
  if (x.size() != dim()) {
    std::ostringstream os;
    os << what << ": expected a " << dim() << "-vector, got size " << x.size();
    throw ContractError(os.str());
  }
  if (!x.allFinite() || !contains(x)) {
    std::ostringstream os;
    os << what << ": point (" << x.transpose() << ") outside the domain of chart " << id();
    throw DomainError(os.str());
  }
}

Vec contract_christoffel(const CoordTensor & gamma, const Vec & u, const Vec & w)
{
  const int n = gamma.dim();
  Vec out = Vec::Zero(n);
  for (int k = 0; k < n; ++k) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      if (u[i] == 0.0) {continue;}
      for (int j = 0; j < n; ++j) {
        s += gamma(k, i, j) * u[i] * w[j];
      }
    }
    out[k] = s;
  }
  return out;
}

Vec contract_riemann(const CoordTensor & r, const Vec & x, const Vec & y, const Vec & z)
{
  const int n = r.dim();
  Vec out = Vec::Zero(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double xy = x[i] * y[j];
      if (xy == 0.0) {continue;}
      for (int k = 0; k < n; ++k) {
        const double c = xy * z[k];
        for (int l = 0; l < n; ++l) {
          out[l] += r(l, i, j, k) * c;
        }
      }
    }
  }
  return out;
}

Vec contract_nabla_riemann(
  const CoordTensor & dr, const Vec & w, const Vec & x, const Vec & y, const Vec & z)
{
  const int n = dr.dim();
  Vec out = Vec::Zero(n);
  for (int m = 0; m < n; ++m) {
    if (w[m] == 0.0) {continue;}
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double c0 = w[m] * x[i] * y[j];
        if (c0 == 0.0) {continue;}
        for (int k = 0; k < n; ++k) {
          const double c = c0 * z[k];
          for (int l = 0; l < n; ++l) {
            out[l] += dr(m, l, i, j, k) * c;
          }
        }
      }
    }
  }
  return out;
}

Vec contract_nabla2_riemann(
  const CoordTensor & d2r, const Vec & w1, const Vec & w2, const Vec & x, const Vec & y,
  const Vec & z)
{
  const int n = d2r.dim();
  Vec out = Vec::Zero(n);
  for (int p = 0; p < n; ++p) {
    for (int m = 0; m < n; ++m) {
      const double wpm = w1[p] * w2[m];
      if (wpm == 0.0) {continue;}
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          const double c0 = wpm * x[i] * y[j];
          if (c0 == 0.0) {continue;}
          for (int k = 0; k < n; ++k) {
            const double c = c0 * z[k];
            for (int l = 0; l < n; ++l) {
              out[l] += d2r(p, m, l, i, j, k) * c;
            }
          }
        }
      }
    }
  }
  return out;
}

double inner(const ManifoldChart & chart, const Vec & x, const Vec & u, const Vec & w)
{
  return u.dot(chart.metric(x) * w);
}

double norm(const ManifoldChart & chart, const Vec & x, const Vec & u)
{
  return std::sqrt(std::max(0.0, inner(chart, x, u, u)));
}

Vec curvature_endo(
  const ManifoldChart & chart, const Vec & x, const Vec & X, const Vec & Y, const Vec & Z)
{
  chart.require_inside(x, "curvature_endo");
  return contract_riemann(chart.riemann(x), X, Y, Z);
}

Vec nabla_R(
  const ManifoldChart & chart, const Vec & x, const Vec & W, const Vec & X, const Vec & Y,
  const Vec & Z)
{
  chart.require_inside(x, "nabla_R");
  if (chart.parallel_curvature()) {return Vec::Zero(chart.dim());}
  return contract_nabla_riemann(chart.nabla_riemann(x), W, X, Y, Z);
}

Vec nabla2_R(
  const ManifoldChart & chart, const Vec & x, const Vec & W, const Vec & X, const Vec & Y,
  const Vec & Z)
{
  chart.require_inside(x, "nabla2_R");
  if (chart.parallel_curvature()) {return Vec::Zero(chart.dim());}
  return contract_nabla2_riemann(chart.nabla2_riemann(x), W, W, X, Y, Z);
}

Mat orthonormalize(const Mat & g, const Mat & basis)
{
  Mat e = basis;
  for (int c = 0; c < e.cols(); ++c) {
    for (int p = 0; p < c; ++p) {
      e.col(c) -= e.col(p).dot(g * e.col(c)) * e.col(p);
    }
    const double nrm = std::sqrt(e.col(c).dot(g * e.col(c)));
    if (!(nrm > 0.0)) {
      throw NumericalError("orthonormalize: degenerate basis");
    }
    e.col(c) /= nrm;
  }
  return e;
}

}  // namespace cubicplan
