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

#ifndef CUBICPLAN__ERRORS_HPP_
#define CUBICPLAN__ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Core>

namespace cubicplan
{

class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// A chart point was evaluated outside the chart's validity region.
class DomainError : public Error
{
public:
  using Error::Error;
};

/// An integrated curve left the chart domain.
class ChartEscapeError : public DomainError
{
public:
  ChartEscapeError(const std::string & what, double escape_time)
  : DomainError(what), escape_time_(escape_time) {}
  double escape_time() const {return escape_time_;}

private:
  double escape_time_;
};

class NumericalError : public Error
{
public:
  using Error::Error;
};

/// A precondition of an operation was violated by the caller.
class ContractError : public Error
{
public:
  using Error::Error;
};

class OutOfRangeError : public Error
{
public:
  using Error::Error;
};

/// Shooting or descent gave up; carries the best iterate seen.
class NonConvergenceError : public Error
{
public:
  NonConvergenceError(
    const std::string & what, Eigen::VectorXd best_y, Eigen::VectorXd best_z,
    double best_residual)
  : Error(what), best_y_(std::move(best_y)), best_z_(std::move(best_z)),
    best_residual_(best_residual) {}

  const Eigen::VectorXd & best_y() const {return best_y_;}
  const Eigen::VectorXd & best_z() const {return best_z_;}
  double best_residual() const {return best_residual_;}

private:
  Eigen::VectorXd best_y_;
  Eigen::VectorXd best_z_;
  double best_residual_;
};

/// The differential of the bi-exponential map is numerically singular.
class CriticalBiexpError : public Error
{
public:
  CriticalBiexpError(const std::string & what, double condition)
  : Error(what), condition_(condition) {}
  double condition() const {return condition_;}

private:
  double condition_;
};

class ConstructionFailure : public Error
{
public:
  using Error::Error;
};

class BasisError : public Error
{
public:
  using Error::Error;
};

/// Malformed or schema-violating scenario input; line and column are
/// 1-based and zero when unknown.
class ConfigError : public Error
{
public:
  ConfigError(const std::string & what, int line = 0, int column = 0)
  : Error(what), line_(line), column_(column) {}
  int line() const {return line_;}
  int column() const {return column_;}

private:
  int line_;
  int column_;
};

class IoError : public Error
{
public:
  using Error::Error;
};

}  // namespace cubicplan

#endif  // CUBICPLAN__ERRORS_HPP_
