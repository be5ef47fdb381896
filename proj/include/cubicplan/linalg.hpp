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

#ifndef CUBICPLAN__LINALG_HPP_
#define CUBICPLAN__LINALG_HPP_

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace cubicplan
{

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Dense coordinate tensor with every index ranging over [0, dim).
/// Indices are row-major: the last index varies fastest.
class CoordTensor
{
public:
  CoordTensor() = default;
  CoordTensor(int dim, int rank)
  : dim_(dim), rank_(rank), data_(size_for(dim, rank), 0.0) {}

  int dim() const {return dim_;}
  int rank() const {return rank_;}
  std::size_t size() const {return data_.size();}

  template<class ... Idx>
  double & operator()(Idx... idx)
  {
    return data_[flat(idx ...)];
  }

  template<class ... Idx>
  double operator()(Idx... idx) const
  {
    return data_[flat(idx ...)];
  }

  double * data() {return data_.data();}
  const double * data() const {return data_.data();}

  void set_zero() {std::fill(data_.begin(), data_.end(), 0.0);}

  bool is_zero() const
  {
    for (double d : data_) {
      if (d != 0.0) {return false;}
    }
    return true;
  }

  CoordTensor & operator+=(const CoordTensor & o)
  {
    assert(o.data_.size() == data_.size());
    for (std::size_t i = 0; i < data_.size(); ++i) {data_[i] += o.data_[i];}
    return *this;
  }

  CoordTensor & operator*=(double s)
  {
    for (double & d : data_) {d *= s;}
    return *this;
  }

  double max_abs() const
  {
    double m = 0.0;
    for (double d : data_) {m = std::max(m, std::abs(d));}
    return m;
  }

private:
  static std::size_t size_for(int dim, int rank)
  {
    std::size_t s = 1;
    for (int r = 0; r < rank; ++r) {s *= static_cast<std::size_t>(dim);}
    return s;
  }

  template<class ... Idx>
  std::size_t flat(Idx... idx) const
  {
    assert(static_cast<int>(sizeof...(Idx)) == rank_);
    std::size_t f = 0;
    ((f = f * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(idx)), ...);
    return f;
  }

  int dim_ = 0;
  int rank_ = 0;
  std::vector<double> data_;
};

}  // namespace cubicplan

#endif  // CUBICPLAN__LINALG_HPP_
