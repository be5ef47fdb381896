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

#include "flow.hpp"

#include <string>

namespace cubicplan::detail
{

AugmentedFlow::AugmentedFlow(
  const ManifoldChart & chart, const Potential & potential, int fields, int vectors)
: chart_(chart), potential_(potential), n_(chart.dim()), fields_(fields), vectors_(vectors)
{
  if (&potential.chart() != &chart && potential.chart().id() != chart.id()) {
    throw ContractError("potential and trajectory live on different charts");
  }
}

Vec AugmentedFlow::rhs(const Vec & y) const
{
  const int n = n_;
  const Vec q = y.segment(0, n);
  const Vec v = y.segment(n, n);
  const Vec a = y.segment(2 * n, n);
  const Vec j = y.segment(3 * n, n);
  chart_.require_inside(q, "curve");

  const CoordTensor gamma = chart_.christoffel(q);
  Mat gv(n, n);
  for (int k = 0; k < n; ++k) {
    for (int m = 0; m < n; ++m) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) {s += gamma(k, i, m) * v[i];}
      gv(k, m) = s;
    }
  }
  const CoordTensor r = chart_.riemann(q);

  Vec out(y.size());
  out.segment(0, n) = v;
  out.segment(n, n) = a - gv * v;
  out.segment(2 * n, n) = j - gv * a;
  Vec dj = -contract_riemann(r, a, v, v) - gv * j;
  if (!potential_.is_zero()) {dj -= potential_.gradient(q);}
  out.segment(3 * n, n) = dj;

  if (fields_ > 0) {
    CurveState s;
    s.q = q;
    s.v = v;
    s.a = a;
    s.j = j;
    const FCoefficients f = f_coefficients(chart_, s);
    Mat lower = f.F0;
    if (!potential_.is_zero()) {lower += potential_.hessian(q);}
    for (int k = 0; k < fields_; ++k) {
      const int o = field_offset(k);
      const auto X = y.segment(o, n);
      const auto X1 = y.segment(o + n, n);
      const auto X2 = y.segment(o + 2 * n, n);
      const auto X3 = y.segment(o + 3 * n, n);
      out.segment(o, n) = X1 - gv * X;
      out.segment(o + n, n) = X2 - gv * X1;
      out.segment(o + 2 * n, n) = X3 - gv * X2;
      out.segment(o + 3 * n, n) = -(lower * X + f.F1 * X1 + f.F2 * X2) - gv * X3;
    }
  }
  for (int k = 0; k < vectors_; ++k) {
    const int o = vector_offset(k);
    out.segment(o, n) = -gv * y.segment(o, n);
  }
  return out;
}

void AugmentedFlow::step(Vec & y, double t, double h) const
{
  try {
    const Vec k1 = rhs(y);
    const Vec k2 = rhs(y + 0.5 * h * k1);
    const Vec k3 = rhs(y + 0.5 * h * k2);
    const Vec k4 = rhs(y + h * k3);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  } catch (const ChartEscapeError &) {
    throw;
  } catch (const DomainError & e) {
    throw ChartEscapeError(
            "curve left the chart domain near t = " + std::to_string(t) + ": " + e.what(), t);
  }
  if (!y.allFinite()) {
    throw NumericalError("non-finite state near t = " + std::to_string(t + h));
  }
  if (!chart_.contains(y.head(n_))) {
    throw ChartEscapeError(
            "curve left the chart domain near t = " + std::to_string(t + h), t + h);
  }
}

Vec AugmentedFlow::pack(const CurveState & s) const
{
  Vec y = Vec::Zero(size());
  y.segment(0, n_) = s.q;
  y.segment(n_, n_) = s.v;
  y.segment(2 * n_, n_) = s.a;
  y.segment(3 * n_, n_) = s.j;
  return y;
}

CurveState AugmentedFlow::unpack(const Vec & y, double t) const
{
  CurveState s;
  s.t = t;
  s.q = y.segment(0, n_);
  s.v = y.segment(n_, n_);
  s.a = y.segment(2 * n_, n_);
  s.j = y.segment(3 * n_, n_);
  return s;
}

void AugmentedFlow::set_field(Vec & y, int k, const JacobiState & f) const
{
  const int o = field_offset(k);
  y.segment(o, n_) = f.X;
  y.segment(o + n_, n_) = f.dX;
  y.segment(o + 2 * n_, n_) = f.d2X;
  y.segment(o + 3 * n_, n_) = f.d3X;
}

JacobiState AugmentedFlow::field(const Vec & y, int k, double t) const
{
  const int o = field_offset(k);
  JacobiState f;
  f.t = t;
  f.X = y.segment(o, n_);
  f.dX = y.segment(o + n_, n_);
  f.d2X = y.segment(o + 2 * n_, n_);
  f.d3X = y.segment(o + 3 * n_, n_);
  return f;
}

NodeForm node_form(const ManifoldChart & chart, const Potential & potential, const CurveState & s)
{
  NodeForm nf;
  nf.g = chart.metric(s.q);
  nf.f = f_coefficients(chart, s);
  nf.H = potential.is_zero() ? Mat::Zero(chart.dim(), chart.dim()) : potential.hessian(s.q);
  return nf;
}

double cubic_integrand(
  const NodeForm & nf, const Vec & A, const Vec & dA, const Vec & d2A, const Vec & B,
  const Vec & d2B)
{
  const Vec fa = nf.f.F0 * A + nf.f.F1 * dA + nf.f.F2 * d2A;
  return d2A.dot(nf.g * d2B) + B.dot(nf.g * fa);
}

double potential_integrand(const NodeForm & nf, const Vec & A, const Vec & B)
{
  return B.dot(nf.g * (nf.H * A));
}

}  // namespace cubicplan::detail
