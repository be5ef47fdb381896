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

#ifndef GEOMETRY__CONSTANT_CURVATURE_HPP_
#define GEOMETRY__CONSTANT_CURVATURE_HPP_

#include "cubicplan/linalg.hpp"

namespace cubicplan
{

/// R^l_ijk of a space form with sectional curvature kappa and metric g at x.
CoordTensor constant_curvature_riemann(const Mat & g, double kappa);

}  // namespace cubicplan

#endif  // GEOMETRY__CONSTANT_CURVATURE_HPP_
