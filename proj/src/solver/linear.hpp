// Copyright 2026 The cgplan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CGPLAN_SOLVER_LINEAR_HPP_
#define CGPLAN_SOLVER_LINEAR_HPP_

#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace cgplan::detail {

using Triplets = std::vector<Eigen::Triplet<double>>;

// Solves A X = B for square A given as triplets (duplicates are summed).
// Dense LU with partial pivoting up to kDenseLimit unknowns, sparse LU with
// iterative refinement above. Throws InternalError when A is singular.
inline constexpr int kDenseLimit = 2000;
Eigen::MatrixXd SolveLinear(int n, const Triplets& a, const Eigen::MatrixXd& b);

}  // namespace cgplan::detail

#endif  // CGPLAN_SOLVER_LINEAR_HPP_
