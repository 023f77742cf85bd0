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

#ifndef TRIWAVE_TESTS_ORACLES_HPP
#define TRIWAVE_TESTS_ORACLES_HPP

// Reference computations that share no code path with the library: the
// Hamiltonian is assembled from single-mode ladder matrices on a full Fock
// cube and exponentiated through a dense eigensolver.

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "triwave/evolution.hpp"

namespace triwave::testing {

inline constexpr int kMaxOracleCutoff = 8;

/// Full Fock cube {0..cutoff}^3 with a dense Hamiltonian.
class DenseOracle {
 public:
  /// coupling == number_recombination builds the ideal recombination
  /// Hamiltonian instead of a b c^dag + h.c. Throws for cutoff > 8.
  explicit DenseOracle(int cutoff, Coupling coupling = Coupling::trilinear);

  int cutoff() const { return cutoff_; }
  int dimension() const { return static_cast<int>(hamiltonian_.rows()); }
  int index(FockTriple t) const;
  const Eigen::MatrixXd& hamiltonian() const { return hamiltonian_; }

  Eigen::VectorXcd evolve(const Eigen::VectorXcd& amplitudes, double tau) const;

  Eigen::VectorXcd to_cube(const ThreeModeState& state) const;

 private:
  int cutoff_;
  Eigen::MatrixXd hamiltonian_;
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXd eigenvectors_;
};

/// Evolves full-cube amplitudes; builds a fresh oracle for every call.
Eigen::VectorXcd dense_oracle_evolve(const Eigen::VectorXcd& amplitudes,
                                     double tau, int cutoff);

/// <target| a b c^dag |source> from the ladder rules a|n> = sqrt(n)|n-1>,
/// c^dag|n> = sqrt(n+1)|n+1>.
double trilinear_element(FockTriple target, FockTriple source);

/// <target| c^dag (b^dag b + 1)^(-1/2) a b |source>.
double recombination_element(FockTriple target, FockTriple source);

}  // namespace triwave::testing

#endif  // TRIWAVE_TESTS_ORACLES_HPP
