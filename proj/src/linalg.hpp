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

#ifndef QSLIDE_SRC_LINALG_HPP_
#define QSLIDE_SRC_LINALG_HPP_

#include <Eigen/Dense>

namespace qslide::detail {

struct Eigensystem {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // column j <-> values[j]
};

// Full eigensystem of a real symmetric tridiagonal matrix (LAPACK dstedc).
Eigensystem tridiagonal_eigensystem(const Eigen::VectorXd& diagonal,
                                    const Eigen::VectorXd& off_diagonal);

// Full eigensystem of a dense real symmetric matrix (LAPACK dsyevd).
Eigensystem symmetric_eigensystem(const Eigen::MatrixXd& matrix);

}  // namespace qslide::detail

#endif  // QSLIDE_SRC_LINALG_HPP_
