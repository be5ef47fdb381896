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

#include "cubicplan/bspline.hpp"

#include <stdexcept>

#include "cubicplan/errors.hpp"

namespace cubicplan
{

ClampedBSpline::ClampedBSpline(int degree, double a, double b, int intervals)
: p_(degree)
{
  if (degree < 1 || intervals < 1 || !(b > a)) {throw ContractError("invalid B-spline basis");}
  for (int i = 0; i < degree; ++i) {knots_.push_back(a);}
  for (int i = 0; i <= intervals; ++i) {
    knots_.push_back(i == intervals ? b : a + (b - a) * i / intervals);
  }
  for (int i = 0; i < degree; ++i) {knots_.push_back(b);}
}

int ClampedBSpline::span(double t) const
{
  const int n = count() - 1;
  if (t >= knots_[n + 1]) {return n;}
  if (t <= knots_[p_]) {return p_;}
  int low = p_, high = n + 1;
  int mid = (low + high) / 2;
  while (t < knots_[mid] || t >= knots_[mid + 1]) {
    if (t < knots_[mid]) {high = mid;} else {low = mid;}
    mid = (low + high) / 2;
  }
  return mid;
}

Mat ClampedBSpline::local_derivatives(double t, int derivs, int * first) const
{
  const int p = p_;
  const int i = span(t);
  const auto & U = knots_;
  Mat ndu(p + 1, p + 1);
  std::vector<double> left(p + 1), right(p + 1);
  ndu(0, 0) = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[j] = t - U[i + 1 - j];
    right[j] = U[i + j] - t;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      ndu(j, r) = right[r + 1] + left[j - r];
      const double temp = ndu(r, j - 1) / ndu(j, r);
      ndu(r, j) = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    ndu(j, j) = saved;
  }
  const int nd = std::min(derivs, p);
  Mat ders = Mat::Zero(derivs + 1, p + 1);
  for (int j = 0; j <= p; ++j) {ders(0, j) = ndu(j, p);}
  Mat a(2, p + 1);
  for (int r = 0; r <= p; ++r) {
    int s1 = 0, s2 = 1;
    a(0, 0) = 1.0;
    for (int k = 1; k <= nd; ++k) {
      double d = 0.0;
      const int rk = r - k, pk = p - k;
      if (r >= k) {
        a(s2, 0) = a(s1, 0) / ndu(pk + 1, rk);
        d = a(s2, 0) * ndu(rk, pk);
      }
      const int j1 = rk >= -1 ? 1 : -rk;
      const int j2 = r - 1 <= pk ? k - 1 : p - r;
      for (int j = j1; j <= j2; ++j) {
        a(s2, j) = (a(s1, j) - a(s1, j - 1)) / ndu(pk + 1, rk + j);
        d += a(s2, j) * ndu(rk + j, pk);
      }
      if (r <= pk) {
        a(s2, k) = -a(s1, k - 1) / ndu(pk + 1, r);
        d += a(s2, k) * ndu(r, pk);
      }
      ders(k, r) = d;
      std::swap(s1, s2);
    }
  }
  double factor = p;
  for (int k = 1; k <= nd; ++k) {
    ders.row(k) *= factor;
    factor *= p - k;
  }
  *first = i - p;
  return ders;
}

AdmissibleBasis::AdmissibleBasis(double a, double b, int m)
: a_(a), b_(b), m_(m), spline_(5, a, b, std::max(1, m - 1))
{
  if (m < 1) {throw ContractError("basis size must be at least 1");}
}

Mat AdmissibleBasis::local(double t, int * first) const
{
  if (m_ == 1) {
    const double len = b_ - a_;
    const double s = (t - a_) / len;
    Mat out(3, 1);
    out(0, 0) = s * s * (1 - s) * (1 - s);
    out(1, 0) = (2 * s - 6 * s * s + 4 * s * s * s) / len;
    out(2, 0) = (2 - 12 * s + 12 * s * s) / (len * len);
    *first = 0;
    return out;
  }
  int f = 0;
  const Mat all = spline_.local_derivatives(t, 2, &f);
  // Drop the two outermost functions at each end.
  const int lo = std::max(f, 2);
  const int hi = std::min(f + static_cast<int>(all.cols()) - 1, spline_.count() - 3);
  if (hi < lo) {
    *first = 0;
    return Mat(3, 0);
  }
  *first = lo - 2;
  return all.block(0, lo - f, 3, hi - lo + 1);
}

bool nested_bases(int coarse, int fine)
{
  if (coarse == 1) {return fine >= 1;}
  return fine >= coarse && (fine - 1) % (coarse - 1) == 0;
}

}  // namespace cubicplan
