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

#include <cmath>
#include <utility>

#include "cubicplan/potentials.hpp"

namespace cubicplan
{

Potential::Potential(ChartPtr chart)
: chart_(std::move(chart))
{
  if (!chart_) {throw ContractError("potential needs a chart");}
}

Vec Potential::gradient(const Vec & x) const
{
  if (is_zero()) {return Vec::Zero(chart_->dim());}
  return chart_->metric(x).ldlt().solve(differential(x));
}

Mat Potential::hessian(const Vec & x) const
{
  const int n = chart_->dim();
  if (is_zero()) {return Mat::Zero(n, n);}
  const Vec dv = differential(x);
  Mat hess = coordinate_hessian(x);
  const CoordTensor gamma = chart_->christoffel(x);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) {s += gamma(k, i, j) * dv[k];}
      hess(i, j) -= s;
    }
  }
  return chart_->metric(x).ldlt().solve(hess);
}

Vec Potential::hessian_op(const Vec & x, const Vec & X) const
{
  return hessian(x) * X;
}

Vec differential_fd(const Potential & v, const Vec & x, double h)
{
  const int n = static_cast<int>(x.size());
  Vec d(n);
  for (int i = 0; i < n; ++i) {
    auto at = [&](double s) {
        Vec y = x;
        y[i] += s * h;
        return v.value(y);
      };
    d[i] = (-at(2) + 8 * at(1) - 8 * at(-1) + at(-2)) / (12 * h);
  }
  return d;
}

Mat coordinate_hessian_fd(const Potential & v, const Vec & x, double h)
{
  const int n = static_cast<int>(x.size());
  Mat hess(n, n);
  const double f0 = v.value(x);
  for (int i = 0; i < n; ++i) {
    auto at = [&](double s) {
        Vec y = x;
        y[i] += s * h;
        return v.value(y);
      };
    hess(i, i) = (-at(2) + 16 * at(1) - 30 * f0 + 16 * at(-1) - at(-2)) / (12 * h * h);
    for (int j = 0; j < i; ++j) {
      auto mixed = [&](double step) {
          auto f = [&](double si, double sj) {
              Vec y = x;
              y[i] += si * step;
              y[j] += sj * step;
              return v.value(y);
            };
          return (f(1, 1) - f(1, -1) - f(-1, 1) + f(-1, -1)) / (4 * step * step);
        };
      const double m = (4 * mixed(h) - mixed(2 * h)) / 3;
      hess(i, j) = m;
      hess(j, i) = m;
    }
  }
  return hess;
}

namespace
{

nlohmann::json vec_json(const Vec & v)
{
  return std::vector<double>(v.data(), v.data() + v.size());
}

class ZeroPotential final : public Potential
{
public:
  using Potential::Potential;
  double value(const Vec & x) const override
  {
    chart().require_inside(x, "potential");
    return 0.0;
  }
  Vec differential(const Vec & x) const override {return Vec::Zero(x.size());}
  Mat coordinate_hessian(const Vec & x) const override {return Mat::Zero(x.size(), x.size());}
  bool is_zero() const override {return true;}
  nlohmann::json to_json() const override {return {{"type", "zero"}};}
};

class GaussianObstacle final : public Potential
{
public:
  GaussianObstacle(ChartPtr chart, Vec center, double strength, double width, DistanceMode mode)
  : Potential(std::move(chart)), center_(std::move(center)), strength_(strength),
    width_(width), mode_(mode)
  {
    if (!(strength > 0.0) || !(width > 0.0)) {
      throw ContractError("gaussian_obstacle: A and sigma must be positive");
    }
    this->chart().require_inside(center_, "gaussian_obstacle center");
  }

  double value(const Vec & x) const override
  {
    const double d2 = mode_ == DistanceMode::chart ?
      (this->chart().require_inside(x, "potential"), (x - center_).squaredNorm()) :
      std::pow(this->chart().distance(x, center_), 2);
    return strength_ * std::exp(-d2 / (2.0 * width_ * width_));
  }

  Vec differential(const Vec & x) const override
  {
    if (mode_ == DistanceMode::riemannian) {return differential_fd(*this, x, 1e-4);}
    return -value(x) / (width_ * width_) * (x - center_);
  }

  Mat coordinate_hessian(const Vec & x) const override
  {
    if (mode_ == DistanceMode::riemannian) {return coordinate_hessian_fd(*this, x, 1e-3);}
    const Vec r = x - center_;
    const double s2 = width_ * width_;
    return value(x) * (r * r.transpose() / (s2 * s2) - Mat::Identity(x.size(), x.size()) / s2);
  }

  nlohmann::json to_json() const override
  {
    return {{"type", "gaussian"}, {"center", vec_json(center_)}, {"A", strength_},
      {"sigma", width_}, {"distance", mode_ == DistanceMode::chart ? "chart" : "riemannian"}};
  }

private:
  Vec center_;
  double strength_;
  double width_;
  DistanceMode mode_;
};

class QuadraticWell final : public Potential
{
public:
  QuadraticWell(ChartPtr chart, Vec center, double stiffness)
  : Potential(std::move(chart)), center_(std::move(center)), stiffness_(stiffness)
  {
    if (!(stiffness > 0.0)) {throw ContractError("quadratic_well: k must be positive");}
    if (center_.size() != this->chart().dim()) {
      throw ContractError("quadratic_well: center has the wrong size");
    }
  }
  double value(const Vec & x) const override
  {
    chart().require_inside(x, "potential");
    return 0.5 * stiffness_ * (x - center_).squaredNorm();
  }
  Vec differential(const Vec & x) const override {return stiffness_ * (x - center_);}
  Mat coordinate_hessian(const Vec & x) const override
  {
    return stiffness_ * Mat::Identity(x.size(), x.size());
  }
  nlohmann::json to_json() const override
  {
    return {{"type", "quadratic"}, {"center", vec_json(center_)}, {"k", stiffness_}};
  }

private:
  Vec center_;
  double stiffness_;
};

class SumPotential final : public Potential
{
public:
  explicit SumPotential(std::vector<PotentialPtr> terms)
  : Potential(terms.at(0)->chart_ptr()), terms_(std::move(terms))
  {
    for (const auto & t : terms_) {
      if (t->chart().id() != chart().id()) {
        throw ContractError("sum: terms live on different charts");
      }
    }
  }
  double value(const Vec & x) const override
  {
    double s = 0.0;
    for (const auto & t : terms_) {s += t->value(x);}
    return s;
  }
  Vec differential(const Vec & x) const override
  {
    Vec s = Vec::Zero(x.size());
    for (const auto & t : terms_) {s += t->differential(x);}
    return s;
  }
  Mat coordinate_hessian(const Vec & x) const override
  {
    Mat s = Mat::Zero(x.size(), x.size());
    for (const auto & t : terms_) {s += t->coordinate_hessian(x);}
    return s;
  }
  bool is_zero() const override
  {
    for (const auto & t : terms_) {
      if (!t->is_zero()) {return false;}
    }
    return true;
  }
  nlohmann::json to_json() const override
  {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto & t : terms_) {arr.push_back(t->to_json());}
    return {{"type", "sum"}, {"terms", arr}};
  }

private:
  std::vector<PotentialPtr> terms_;
};

class ScaledPotential final : public Potential
{
public:
  ScaledPotential(PotentialPtr base, double lambda)
  : Potential(base->chart_ptr()), base_(std::move(base)), lambda_(lambda)
  {
    if (!(lambda >= 0.0)) {throw ContractError("scaled: lambda must be non-negative");}
  }
  double value(const Vec & x) const override {return lambda_ * base_->value(x);}
  Vec differential(const Vec & x) const override {return lambda_ * base_->differential(x);}
  Mat coordinate_hessian(const Vec & x) const override
  {
    return lambda_ * base_->coordinate_hessian(x);
  }
  bool is_zero() const override {return lambda_ == 0.0 || base_->is_zero();}
  nlohmann::json to_json() const override
  {
    return {{"type", "scaled"}, {"lambda", lambda_}, {"base", base_->to_json()}};
  }

private:
  PotentialPtr base_;
  double lambda_;
};

Vec read_vec(const nlohmann::json & j, const char * key, int dim)
{
  const auto v = j.at(key).get<std::vector<double>>();
  if (static_cast<int>(v.size()) != dim) {
    throw ContractError(std::string("potential: '") + key + "' must have length " +
            std::to_string(dim));
  }
  return Eigen::Map<const Vec>(v.data(), dim);
}

}  // namespace

PotentialPtr gaussian_obstacle(
  ChartPtr chart, const Vec & center, double strength, double width, DistanceMode mode)
{
  return std::make_shared<GaussianObstacle>(std::move(chart), center, strength, width, mode);
}

PotentialPtr zero_potential(ChartPtr chart)
{
  return std::make_shared<ZeroPotential>(std::move(chart));
}

PotentialPtr quadratic_well(ChartPtr chart, const Vec & center, double stiffness)
{
  return std::make_shared<QuadraticWell>(std::move(chart), center, stiffness);
}

PotentialPtr sum(const std::vector<PotentialPtr> & terms)
{
  if (terms.empty()) {throw ContractError("sum: empty list of potentials");}
  return std::make_shared<SumPotential>(terms);
}

PotentialPtr scaled(PotentialPtr base, double lambda)
{
  return std::make_shared<ScaledPotential>(std::move(base), lambda);
}

PotentialPtr potential_from_json(ChartPtr chart, const nlohmann::json & j)
{
  const int n = chart->dim();
  const std::string type = j.at("type").get<std::string>();
  if (type == "zero") {return zero_potential(chart);}
  if (type == "gaussian") {
    const std::string mode = j.value("distance", "chart");
    if (mode != "chart" && mode != "riemannian") {
      throw ContractError("potential: distance must be 'chart' or 'riemannian'");
    }
    return gaussian_obstacle(
      chart, read_vec(j, "center", n), j.at("A").get<double>(), j.at("sigma").get<double>(),
      mode == "chart" ? DistanceMode::chart : DistanceMode::riemannian);
  }
  if (type == "quadratic") {
    return quadratic_well(chart, read_vec(j, "center", n), j.at("k").get<double>());
  }
  if (type == "sum") {
    std::vector<PotentialPtr> terms;
    for (const auto & t : j.at("terms")) {terms.push_back(potential_from_json(chart, t));}
    return sum(terms);
  }
  if (type == "scaled") {
    return scaled(potential_from_json(chart, j.at("base")), j.at("lambda").get<double>());
  }
  throw ContractError("potential: unknown type '" + type + "'");
}

}  // namespace cubicplan
