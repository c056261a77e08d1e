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

#include "linear.hpp"

#include <string>

#include <Eigen/SparseLU>

#include "cgplan/errors.hpp"

namespace cgplan::detail {

Eigen::MatrixXd SolveLinear(int n, const Triplets& a, const Eigen::MatrixXd& b) {
  CGPLAN_CHECK(b.rows() == n, "right-hand side has the wrong height");
  if (n == 0) return Eigen::MatrixXd(0, b.cols());
  if (n <= kDenseLimit) {
    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(n, n);
    for (const auto& t : a) dense(t.row(), t.col()) += t.value();
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(dense);
    CGPLAN_CHECK(lu.rcond() > 1e-13,
                 "singular linear system (rcond " + std::to_string(lu.rcond()) +
                     ")");
    return lu.solve(b);
  }
  Eigen::SparseMatrix<double> sparse(n, n);
  sparse.setFromTriplets(a.begin(), a.end());
  sparse.makeCompressed();
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.analyzePattern(sparse);
  lu.factorize(sparse);
  CGPLAN_CHECK(lu.info() == Eigen::Success, "singular sparse linear system");
  Eigen::MatrixXd x = lu.solve(b);
  for (int step = 0; step < 2; ++step) {
    Eigen::MatrixXd residual = b - sparse * x;
    x += lu.solve(residual);
  }
  return x;
}

}  // namespace cgplan::detail
