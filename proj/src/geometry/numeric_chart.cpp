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

#include "json.hpp"

#include "cubicplan/geometry.hpp"

namespace cubicplan
{

namespace
{

// Steps per derivative order. The first derivative of the metric uses the
// caller's relative step; deeper derivatives use wider steps so roundoff
// does not swamp the result.
constexpr double kSecondDerivativeScale = 2.0;
constexpr double kCurvatureDerivativeStep = 1e-2;
constexpr double kCurvatureSecondDerivativeStep = 5e-2;

/// Applies the Levi-Civita covariant derivative to a tensor field that has a
/// single contravariant index at position `upper` and is covariant elsewhere.
/// The new derivative index is prepended.
template<class Field>
CoordTensor covariant_derivative(
  const Field & field, const Vec & x, int rank, int upper, const CoordTensor & gamma,
  double step)
{
  const int n = static_cast<int>(x.size());
  CoordTensor out(n, rank + 1);
  const CoordTensor center = field(x);
  std::size_t block = center.size();

  for (int p = 0; p < n; ++p) {
    const double hp = step * std::max(1.0, std::abs(x[p]));
    auto shifted = [&](double k) {
        Vec y = x;
        y[p] += k * hp;
        return field(y);
      };
    const CoordTensor f2 = shifted(2.0);
    const CoordTensor f1 = shifted(1.0);
    const CoordTensor m1 = shifted(-1.0);
    const CoordTensor m2 = shifted(-2.0);
    double * dst = out.data() + static_cast<std::size_t>(p) * block;
    for (std::size_t e = 0; e < block; ++e) {
      dst[e] = (-f2.data()[e] + 8.0 * f1.data()[e] - 8.0 * m1.data()[e] + m2.data()[e]) /
        (12.0 * hp);
    }
  }

  // connection terms
  std::vector<int> idx(rank, 0);
  std::vector<std::size_t> stride(rank, 1);
  for (int r = rank - 2; r >= 0; --r) {stride[r] = stride[r + 1] * n;}
  for (std::size_t e = 0; e < block; ++e) {
    std::size_t rem = e;
    for (int r = 0; r < rank; ++r) {
      idx[r] = static_cast<int>(rem / stride[r]);
      rem %= stride[r];
    }
    for (int p = 0; p < n; ++p) {
      double corr = 0.0;
      for (int s = 0; s < rank; ++s) {
        const std::size_t base = e - static_cast<std::size_t>(idx[s]) * stride[s];
        for (int q = 0; q < n; ++q) {
          const double t = center.data()[base + static_cast<std::size_t>(q) * stride[s]];
          if (s == upper) {
            corr += gamma(idx[s], p, q) * t;
          } else {
            corr -= gamma(q, p, idx[s]) * t;
          }
        }
      }
      out.data()[static_cast<std::size_t>(p) * block + e] += corr;
    }
  }
  return out;
}

class NumericChart final : public ManifoldChart
{
public:
  NumericChart(
    std::string id, int dim, MetricFunction metric, std::function<bool(const Vec &)> domain,
    double relative_step)
  : id_(std::move(id)), dim_(dim), metric_(std::move(metric)), domain_(std::move(domain)),
    step_(relative_step)
  {
    if (dim < 1) {throw ContractError("numeric chart needs dim >= 1");}
    if (!(relative_step > 0.0)) {throw ContractError("numeric chart needs a positive step");}
  }

  int dim() const override {return dim_;}
  const std::string & id() const override {return id_;}
  CurvatureKind kind() const override {return CurvatureKind::generic_numeric;}
  bool parallel_curvature() const override {return false;}
  bool contains(const Vec & x) const override
  {
    return x.size() == dim_ && x.allFinite() && domain_(x);
  }

  Mat metric(const Vec & x) const override
  {
    require_inside(x, "metric");
    return symmetric_metric(x);
  }

  CoordTensor christoffel(const Vec & x) const override
  {
    require_inside(x, "christoffel");
    return christoffel_from(symmetric_metric(x).inverse(), metric_gradient(x));
  }

  CoordTensor riemann(const Vec & x) const override
  {
    require_inside(x, "riemann");
    return riemann_unchecked(x);
  }

  CoordTensor nabla_riemann(const Vec & x) const override
  {
    require_inside(x, "nabla_riemann");
    return nabla_riemann_unchecked(x);
  }

  CoordTensor nabla2_riemann(const Vec & x) const override
  {
    require_inside(x, "nabla2_riemann");
    const CoordTensor gamma = christoffel_unchecked(x);
    auto field = [this](const Vec & y) {return nabla_riemann_unchecked(y);};
    return covariant_derivative(field, x, 5, 1, gamma, kCurvatureSecondDerivativeStep);
  }

private:
  Mat symmetric_metric(const Vec & x) const
  {
    const Mat g = metric_(x);
    if (g.rows() != dim_ || g.cols() != dim_) {
      throw ContractError("numeric chart: metric function returned the wrong shape");
    }
    return 0.5 * (g + g.transpose());
  }

  double step_for(const Vec & x, int k) const {return step_ * std::max(1.0, std::abs(x[k]));}

  // dg(k, i, j) = d_k g_ij
  CoordTensor metric_gradient(const Vec & x) const
  {
    CoordTensor dg(dim_, 3);
    for (int k = 0; k < dim_; ++k) {
      const double h = step_for(x, k);
      auto at = [&](double s) {
          Vec y = x;
          y[k] += s * h;
          return symmetric_metric(y);
        };
      const Mat d = (8.0 * (at(1) - at(-1)) - (at(2) - at(-2))) / (12.0 * h);
      for (int i = 0; i < dim_; ++i) {
        for (int j = 0; j < dim_; ++j) {dg(k, i, j) = d(i, j);}
      }
    }
    return dg;
  }

  // d2g(a, b, i, j) = d_a d_b g_ij
  CoordTensor metric_hessian(const Vec & x) const
  {
    CoordTensor d2g(dim_, 4);
    const Mat g0 = symmetric_metric(x);
    for (int a = 0; a < dim_; ++a) {
      for (int b = a; b < dim_; ++b) {
        const double ha = kSecondDerivativeScale * step_for(x, a);
        const double hb = kSecondDerivativeScale * step_for(x, b);
        Mat d;
        if (a == b) {
          Vec xp = x;
          Vec xm = x;
          xp[a] += ha;
          xm[a] -= ha;
          d = (symmetric_metric(xp) - 2.0 * g0 + symmetric_metric(xm)) / (ha * ha);
        } else {
          auto at = [&](double sa, double sb) {
              Vec y = x;
              y[a] += sa * ha;
              y[b] += sb * hb;
              return symmetric_metric(y);
            };
          d = (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4.0 * ha * hb);
        }
        for (int i = 0; i < dim_; ++i) {
          for (int j = 0; j < dim_; ++j) {
            d2g(a, b, i, j) = d(i, j);
            d2g(b, a, i, j) = d(i, j);
          }
        }
      }
    }
    return d2g;
  }

  CoordTensor christoffel_from(const Mat & ginv, const CoordTensor & dg) const
  {
    CoordTensor gamma(dim_, 3);
    for (int k = 0; k < dim_; ++k) {
      for (int i = 0; i < dim_; ++i) {
        for (int j = 0; j < dim_; ++j) {
          double v = 0.0;
          for (int l = 0; l < dim_; ++l) {
            v += ginv(k, l) * (dg(i, l, j) + dg(j, l, i) - dg(l, i, j));
          }
          gamma(k, i, j) = 0.5 * v;
        }
      }
    }
    return gamma;
  }

  CoordTensor christoffel_unchecked(const Vec & x) const
  {
    return christoffel_from(symmetric_metric(x).inverse(), metric_gradient(x));
  }

  CoordTensor riemann_unchecked(const Vec & x) const
  {
    const int n = dim_;
    const Mat ginv = symmetric_metric(x).inverse();
    const CoordTensor dg = metric_gradient(x);
    const CoordTensor d2g = metric_hessian(x);
    const CoordTensor gamma = christoffel_from(ginv, dg);

    // d_m Gamma^k_ij = 1/2 d_m(g^kl) S_lij + 1/2 g^kl d_m S_lij,
    // S_lij = d_i g_lj + d_j g_li - d_l g_ij, d_m g^-1 = -g^-1 (d_m g) g^-1.
    CoordTensor dgamma(n, 4);  // (m, k, i, j)
    for (int m = 0; m < n; ++m) {
      Mat dgm(n, n);
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {dgm(a, b) = dg(m, a, b);}
      }
      const Mat dginv = -ginv * dgm * ginv;
      for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) {
            double v = 0.0;
            for (int l = 0; l < n; ++l) {
              const double s = dg(i, l, j) + dg(j, l, i) - dg(l, i, j);
              const double ds = d2g(m, i, l, j) + d2g(m, j, l, i) - d2g(m, l, i, j);
              v += dginv(k, l) * s + ginv(k, l) * ds;
            }
            dgamma(m, k, i, j) = 0.5 * v;
          }
        }
      }
    }

    // R^l_ijk = d_i Gamma^l_jk - d_j Gamma^l_ik + Gamma^l_ip Gamma^p_jk - Gamma^l_jp Gamma^p_ik
    CoordTensor r(n, 4);
    for (int l = 0; l < n; ++l) {
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          for (int k = 0; k < n; ++k) {
            double v = dgamma(i, l, j, k) - dgamma(j, l, i, k);
            for (int p = 0; p < n; ++p) {
              v += gamma(l, i, p) * gamma(p, j, k) - gamma(l, j, p) * gamma(p, i, k);
            }
            r(l, i, j, k) = v;
          }
        }
      }
    }
    return r;
  }

  CoordTensor nabla_riemann_unchecked(const Vec & x) const
  {
    const CoordTensor gamma = christoffel_unchecked(x);
    auto field = [this](const Vec & y) {return riemann_unchecked(y);};
    return covariant_derivative(field, x, 4, 0, gamma, kCurvatureDerivativeStep);
  }

  std::string id_;
  int dim_;
  MetricFunction metric_;
  std::function<bool(const Vec &)> domain_;
  double step_;
};

Vec json_vec(const nlohmann::json & j, const char * key, int dim)
{
  if (!j.contains(key)) {return Vec::Zero(dim);}
  const auto v = j.at(key).get<std::vector<double>>();
  if (static_cast<int>(v.size()) != dim) {
    throw ContractError(std::string("metric spec: '") + key + "' has the wrong length");
  }
  return Eigen::Map<const Vec>(v.data(), dim);
}

}  // namespace

ChartPtr make_numeric_chart(
  std::string id, int dim, MetricFunction metric, std::function<bool(const Vec &)> domain,
  double relative_step)
{
  return std::make_shared<NumericChart>(
    std::move(id), dim, std::move(metric), std::move(domain), relative_step);
}

ChartPtr make_numeric_chart_from_json_text(const std::string & text, const std::string & id)
{
  nlohmann::json spec;
  try {
    spec = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error & e) {
    throw ContractError(std::string("metric spec: ") + e.what());
  }
  const std::string family = spec.value("family", "");
  const double step = spec.value("step", 1e-4);
  if (family == "euclidean") {
    const int n = spec.value("dim", 2);
    const double radius = spec.value("domain_radius", 1e6);
    return make_numeric_chart(
      id, n, [n](const Vec &) {return Mat(Mat::Identity(n, n));},
      [radius](const Vec & x) {return x.norm() <= radius;}, step);
  }
  if (family == "sphere2_stereographic") {
    const double radius = spec.value("domain_radius", 4.0);
    return make_numeric_chart(
      id, 2, [](const Vec & x) {
        const double s = 2.0 / (1.0 + x.squaredNorm());
        return Mat(s * s * Mat::Identity(2, 2));
      },
      [radius](const Vec & x) {return x.norm() <= radius;}, step);
  }
  if (family == "hyperbolic2_poincare") {
    const double radius = spec.value("domain_radius", 0.95);
    if (!(radius < 1.0)) {throw ContractError("metric spec: domain_radius must be < 1");}
    return make_numeric_chart(
      id, 2, [](const Vec & x) {
        const double s = 2.0 / (1.0 - x.squaredNorm());
        return Mat(s * s * Mat::Identity(2, 2));
      },
      [radius](const Vec & x) {return x.norm() <= radius;}, step);
  }
  if (family == "conformal_bump") {
    const int n = spec.value("dim", 2);
    const double amplitude = spec.value("amplitude", 0.5);
    const double width = spec.value("width", 1.0);
    const Vec center = json_vec(spec, "center", n);
    const double radius = spec.value("domain_radius", 1e6);
    if (amplitude <= -1.0 || !(width > 0.0)) {
      throw ContractError("metric spec: conformal_bump needs amplitude > -1 and width > 0");
    }
    return make_numeric_chart(
      id, n, [n, amplitude, width, center](const Vec & x) {
        const double s = 1.0 + amplitude *
        std::exp(-(x - center).squaredNorm() / (2.0 * width * width));
        return Mat(s * s * Mat::Identity(n, n));
      },
      [radius](const Vec & x) {return x.norm() <= radius;}, step);
  }
  throw ContractError("metric spec: unknown family '" + family + "'");
}

}  // namespace cubicplan
