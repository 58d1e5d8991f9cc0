/*
 Copyright 2026 The hankelcast Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
#include "hankelcast/linalg.hpp"

#include <algorithm>

#include "hankelcast/errors.hpp"

namespace hankelcast {
namespace {

struct Decomposition {
  Matrix u;
  Vector sigma;
  Matrix v;
  int rank = 0;
};

Decomposition decompose(const Matrix& m, double rank_tol) {
  Decomposition d;
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  d.u = svd.matrixU();
  d.sigma = svd.singularValues();
  d.v = svd.matrixV();
  if (d.sigma.size() == 0) return d;
  const double sigma_max = d.sigma(0);
  if (sigma_max <= 0.0) return d;
  const double threshold =
      rank_tol * static_cast<double>(std::max(m.rows(), m.cols())) * sigma_max;
  d.rank = static_cast<int>((d.sigma.array() > threshold).count());
  return d;
}

bool is_void(const Matrix& m) { return m.rows() == 0 || m.cols() == 0; }

}  // namespace

int numerical_rank(const Matrix& m, double rank_tol) {
  if (is_void(m)) return 0;
  return decompose(m, rank_tol).rank;
}

Matrix kernel_basis(const Matrix& m, double rank_tol) {
  if (m.cols() == 0) return Matrix(0, 0);
  if (m.rows() == 0) return Matrix::Identity(m.cols(), m.cols());
  const Decomposition d = decompose(m, rank_tol);
  return d.v.rightCols(m.cols() - d.rank);
}

LeastSquaresSolution solve_min_norm(const Matrix& a, const Vector& b,
                                    double rank_tol) {
  if (a.rows() != b.size()) {
    throw DimensionError("least-squares right-hand side has " +
                         std::to_string(b.size()) + " entries, expected " +
                         std::to_string(a.rows()));
  }
  LeastSquaresSolution out;
  const double b_norm = b.norm();
  if (is_void(a)) {
    out.solution = Vector::Zero(a.cols());
    out.kernel = Matrix::Identity(a.cols(), a.cols());
    out.residual_norm = b_norm;
  } else {
    const Decomposition d = decompose(a, rank_tol);
    const Index r = d.rank;
    const Vector coeffs = (d.u.leftCols(r).transpose() * b).cwiseQuotient(d.sigma.head(r));
    out.solution = d.v.leftCols(r) * coeffs;
    out.rank = d.rank;
    out.kernel = d.v.rightCols(a.cols() - r);
    out.residual_norm = (a * out.solution - b).norm();
  }
  out.relative_residual = out.residual_norm / std::max(1.0, b_norm);
  return out;
}

}  // namespace hankelcast
