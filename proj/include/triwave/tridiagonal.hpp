// Copyright 2026 The triwave Authors
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

#ifndef TRIWAVE_TRIDIAGONAL_HPP
#define TRIWAVE_TRIDIAGONAL_HPP

#include <span>

#include <Eigen/Dense>

namespace triwave {

struct TridiagonalEigen {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // column j belongs to eigenvalues[j]
};

// Eigendecomposition of a real symmetric tridiagonal matrix by implicit QL
// iterations with Wilkinson-type shifts. `diag` has length d, `offdiag`
// length d - 1 (offdiag[i] couples rows i and i + 1).
TridiagonalEigen tridiagonal_eigen(std::span<const double> diag,
                                   std::span<const double> offdiag);

}  // namespace triwave

#endif  // TRIWAVE_TRIDIAGONAL_HPP
