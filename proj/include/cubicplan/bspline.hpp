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

#ifndef CUBICPLAN__BSPLINE_HPP_
#define CUBICPLAN__BSPLINE_HPP_

#include <vector>

#include "cubicplan/linalg.hpp"

namespace cubicplan
{

/// B-spline basis of the given degree on [a, b] with uniform interior knots
/// and clamped ends.
class ClampedBSpline
{
public:
  ClampedBSpline(int degree, double a, double b, int intervals);

  int degree() const {return p_;}
  int count() const {return static_cast<int>(knots_.size()) - p_ - 1;}
  const std::vector<double> & knots() const {return knots_;}

  /// Index of the knot span containing t.
  int span(double t) const;

  /// Rows: derivative order 0..derivs; columns: the degree + 1 functions
  /// span - degree .. span that may be nonzero at t.
  Mat local_derivatives(double t, int derivs, int * first) const;

private:
  int p_;
  std::vector<double> knots_;
};

/// Profiles on [a, b] vanishing with their first derivative at both ends:
/// clamped quintic B-splines on m - 1 intervals without the two outermost
/// functions at each end (m >= 2), or s^2 (1 - s)^2 for m = 1.
class AdmissibleBasis
{
public:
  AdmissibleBasis(double a, double b, int m);

  int size() const {return m_;}
  /// Values and derivatives (rows 0..2) of the functions that may be nonzero
  /// at t; `first` receives the index of the first column.
  Mat local(double t, int * first) const;

private:
  double a_;
  double b_;
  int m_;
  ClampedBSpline spline_;
};

/// True when the basis of size fine contains the basis of size coarse.
bool nested_bases(int coarse, int fine);

}  // namespace cubicplan

#endif  // CUBICPLAN__BSPLINE_HPP_
