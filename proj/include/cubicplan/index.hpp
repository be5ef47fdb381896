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

#ifndef CUBICPLAN__INDEX_HPP_
#define CUBICPLAN__INDEX_HPP_

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cubicplan/fields.hpp"
#include "cubicplan/jacobi.hpp"

namespace cubicplan
{

namespace detail
{
struct NodeForm;
}

struct IndexFormParts
{
  double cubic = 0.0;
  double symmetric = 0.0;
  double antisymmetric = 0.0;
  double total() const {return cubic + symmetric + antisymmetric;}
};

/// The index form along one trajectory, with the pointwise coefficients
/// computed once.
class IndexForm
{
public:
  IndexForm(const ManifoldChart & chart, const Potential & potential, const Trajectory & traj);
  ~IndexForm();
  IndexForm(IndexForm &&) noexcept;

  double operator()(const AdmissibleField & X, const AdmissibleField & Y) const;
  IndexFormParts decompose(const AdmissibleField & X, const AdmissibleField & Y) const;

  const Trajectory & trajectory() const {return traj_;}
  const std::vector<detail::NodeForm> & nodes() const {return *nodes_;}

private:
  void check(const AdmissibleField & X, const AdmissibleField & Y) const;

  Trajectory traj_;
  std::unique_ptr<std::vector<detail::NodeForm>> nodes_;
};

double index_form(
  const ManifoldChart & chart, const Potential & potential, const Trajectory & traj,
  const AdmissibleField & X, const AdmissibleField & Y);

/// (I_c, P+, P-) with I = I_c + P+ + P-.
IndexFormParts decompose(
  const ManifoldChart & chart, const Potential & potential, const Trajectory & traj,
  const AdmissibleField & X, const AdmissibleField & Y);

struct SecondVariation
{
  double value = 0.0;
  /// Roundoff level of the difference quotient.
  double noise = 0.0;
  std::string warning;
};

/// Mixed central difference of J over exp_q(r X + s Y) with steps eps.
SecondVariation second_variation_fd(
  const ManifoldChart & chart, const Potential & potential, const Trajectory & traj,
  const AdmissibleField & X, const AdmissibleField & Y, double eps = 1e-3);

struct IndexReport
{
  int m = 0;
  int dimension = 0;
  std::vector<double> eigenvalues;
  int index = 0;
  int kernel = 0;
  int extended_index = 0;
  double gram_condition = 0.0;
  std::string verdict;
};

/// Galerkin estimate of the index with m profiles per frame direction.
IndexReport extended_index(
  const ManifoldChart & chart, const Potential & potential, const Trajectory & traj, int m,
  double tolerance = 1e-9);

IndexReport extended_index(const IndexForm & form, const std::vector<Mat> & frame, int m,
  double tolerance = 1e-9);

struct VerdictOptions
{
  /// Smallest Galerkin dimension n * m.
  int galerkin_dimension = 120;
  ScanOptions scan;
};

struct OptimalityReport
{
  BiconjugateReport scan;
  IndexReport index;
  bool not_minimizer = false;
  bool candidate = false;
  bool q_local_minimizer = true;
  std::string verdict;
  std::vector<std::pair<double, double>> certified;
  std::vector<std::string> reasons;
};

OptimalityReport verdict(
  const ManifoldChart & chart, const Potential & potential, const Trajectory & traj,
  const VerdictOptions & options = {});

}  // namespace cubicplan

#endif  // CUBICPLAN__INDEX_HPP_
