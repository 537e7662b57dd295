// Copyright 2026 The qslide Authors
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

#include "linalg.hpp"

#include <lapacke.h>

#include <string>

#include "qslide/errors.hpp"

namespace qslide::detail {

Eigensystem tridiagonal_eigensystem(const Eigen::VectorXd& diagonal,
                                    const Eigen::VectorXd& off_diagonal) {
  const lapack_int n = static_cast<lapack_int>(diagonal.size());
  Eigensystem out;
  out.values = diagonal;
  out.vectors.resize(n, n);
  Eigen::VectorXd work_off = off_diagonal;
  if (n == 0) return out;
  if (work_off.size() != n - 1) {
    throw ConfigError("tridiagonal_eigensystem: off-diagonal must have n-1 entries");
  }
  if (n == 1) {
    out.vectors(0, 0) = 1.0;
    return out;
  }
  lapack_int info = LAPACKE_dstedc(LAPACK_COL_MAJOR, 'I', n, out.values.data(),
                                   work_off.data(), out.vectors.data(), n);
  if (info != 0) {
    throw NumericalError("dstedc failed with info=" + std::to_string(info));
  }
  return out;
}

Eigensystem symmetric_eigensystem(const Eigen::MatrixXd& matrix) {
  const lapack_int n = static_cast<lapack_int>(matrix.rows());
  if (matrix.cols() != n) {
    throw ConfigError("symmetric_eigensystem: matrix must be square");
  }
  Eigensystem out;
  out.vectors = matrix;
  out.values.resize(n);
  if (n == 0) return out;
  lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'U', n, out.vectors.data(), n,
                                   out.values.data());
  if (info != 0) {
    throw NumericalError("dsyevd failed with info=" + std::to_string(info));
  }
  return out;
}

}  // namespace qslide::detail
