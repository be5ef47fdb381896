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

#ifndef CUBICPLAN__SRC__FLOW_HPP_
#define CUBICPLAN__SRC__FLOW_HPP_

#include "cubicplan/dynamics.hpp"
#include "cubicplan/jacobi.hpp"

namespace cubicplan::detail
{

/// The curve ODE together with any number of bi-Jacobi fields and parallel
/// vectors, packed as
///   [q v a j | (X X1 X2 X3) per field | V per vector].
class AugmentedFlow
{
public:
  AugmentedFlow(const ManifoldChart & chart, const Potential & potential, int fields, int vectors);

  int dim() const {return n_;}
  int size() const {return 4 * n_ + 4 * n_ * fields_ + n_ * vectors_;}
  int field_offset(int k) const {return 4 * n_ + 4 * n_ * k;}
  int vector_offset(int k) const {return 4 * n_ + 4 * n_ * fields_ + n_ * k;}

  Vec rhs(const Vec & y) const;
  /// One classical RK4 step; t is used only for error reporting.
  void step(Vec & y, double t, double h) const;

  Vec pack(const CurveState & s) const;
  CurveState unpack(const Vec & y, double t) const;
  void set_field(Vec & y, int k, const JacobiState & f) const;
  JacobiState field(const Vec & y, int k, double t) const;

private:
  const ManifoldChart & chart_;
  const Potential & potential_;
  int n_;
  int fields_;
  int vectors_;
};

/// Pointwise data of the index form at one curve state.
struct NodeForm
{
  Mat g;
  FCoefficients f;
  /// Matrix of X -> nabla_X grad V.
  Mat H;
};

NodeForm node_form(const ManifoldChart & chart, const Potential & potential, const CurveState & s);

/// <D^2A, D^2B> + <B, F(A)>.
double cubic_integrand(
  const NodeForm & nf, const Vec & A, const Vec & dA, const Vec & d2A, const Vec & B,
  const Vec & d2B);

/// <B, nabla_A grad V>.
double potential_integrand(const NodeForm & nf, const Vec & A, const Vec & B);

}  // namespace cubicplan::detail

#endif  // CUBICPLAN__SRC__FLOW_HPP_
