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

#ifndef CUBICPLAN__POTENTIALS_HPP_
#define CUBICPLAN__POTENTIALS_HPP_

#include <memory>
#include <string>
#include <vector>

#include "json.hpp"

#include "cubicplan/geometry.hpp"

namespace cubicplan
{

/// Smooth non-negative artificial potential V on a chart.
///
/// Subclasses supply V, its coordinate differential and coordinate Hessian;
/// the metric-aware quantities are derived here:
///   grad V        = g^-1 dV
///   nabla_X grad V = g^-1 (d^2 V - Gamma^k_ij dV_k) X
class Potential
{
public:
  explicit Potential(ChartPtr chart);
  virtual ~Potential() = default;

  const ManifoldChart & chart() const {return *chart_;}
  const ChartPtr & chart_ptr() const {return chart_;}

  virtual double value(const Vec & x) const = 0;
  virtual Vec differential(const Vec & x) const = 0;
  virtual Mat coordinate_hessian(const Vec & x) const = 0;
  virtual nlohmann::json to_json() const = 0;

  /// True when V is identically zero; lets integrators skip evaluations.
  virtual bool is_zero() const {return false;}

  Vec gradient(const Vec & x) const;
  /// Matrix of X -> nabla_X grad V at x.
  Mat hessian(const Vec & x) const;
  Vec hessian_op(const Vec & x, const Vec & X) const;

  std::string id() const {return to_json().dump();}

private:
  ChartPtr chart_;
};

using PotentialPtr = std::shared_ptr<const Potential>;

/// How a radial obstacle measures distance to its center.
enum class DistanceMode { chart, riemannian };

/// V(x) = A exp(-d(x, c)^2 / (2 sigma^2)).
PotentialPtr gaussian_obstacle(
  ChartPtr chart, const Vec & center, double strength, double width,
  DistanceMode mode = DistanceMode::chart);

PotentialPtr zero_potential(ChartPtr chart);

/// V(x) = k/2 |x - c|^2 in chart coordinates.
PotentialPtr quadratic_well(ChartPtr chart, const Vec & center, double stiffness);

PotentialPtr sum(const std::vector<PotentialPtr> & terms);

/// lambda * V, used for continuation in the obstacle strength.
PotentialPtr scaled(PotentialPtr base, double lambda);

/// Builds a potential from its JSON description (see docs/config.md).
PotentialPtr potential_from_json(ChartPtr chart, const nlohmann::json & j);

/// Central-difference differential and covariant Hessian of V, for checking
/// and for potentials without closed forms.
Vec differential_fd(const Potential & v, const Vec & x, double h = 1e-4);
Mat coordinate_hessian_fd(const Potential & v, const Vec & x, double h = 1e-4);

}  // namespace cubicplan

#endif  // CUBICPLAN__POTENTIALS_HPP_
