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

#ifndef TRIWAVE_EVOLUTION_HPP
#define TRIWAVE_EVOLUTION_HPP

#include <complex>
#include <map>
#include <span>
#include <utility>

#include <Eigen/Dense>

#include "triwave/fock_blocks.hpp"

namespace triwave {

using complex = std::complex<double>;

/// Pure state of modes (a, b, c), stored block by block.
///
/// Every stored vector has exactly the dimension of its block and the state
/// is normalized. `trunc_error` is the probability mass dropped when the
/// state was built from an infinite Fock expansion; evolution never changes
/// it.
class ThreeModeState {
 public:
  using BlockMap = std::map<BlockIndex, Eigen::VectorXcd>;

  /// The vacuum |0, 0, 0>.
  ThreeModeState();

  /// Normalizes the given block vectors. Throws InvalidInput on a wrong
  /// vector length or a zero vector, InvalidBlockIndex on a bad label.
  static ThreeModeState from_blocks(BlockMap blocks, double trunc_error = 0.0);

  /// Builds a normalized state from Fock amplitudes; repeated triples add.
  static ThreeModeState from_fock(
      std::span<const std::pair<FockTriple, complex>> amplitudes,
      double trunc_error = 0.0);

  static ThreeModeState fock(FockTriple t);

  const BlockMap& blocks() const { return blocks_; }
  double trunc_error() const { return trunc_error_; }

  complex amplitude(FockTriple t) const;
  double norm() const;

  /// Largest n_c carrying a non-zero amplitude (0 for states with none).
  int max_n_c() const;

  /// Visits every stored amplitude as f(FockTriple, complex).
  template <class F>
  void for_each(F&& f) const {
    for (const auto& [b, v] : blocks_) {
      for (Eigen::Index n = 0; n < v.size(); ++n) {
        f(FockTriple{b.k - static_cast<int>(n), b.s - b.k - static_cast<int>(n),
                     static_cast<int>(n)},
          v[n]);
      }
    }
  }

 private:
  ThreeModeState(BlockMap blocks, double trunc_error)
      : blocks_(std::move(blocks)), trunc_error_(trunc_error) {}

  friend ThreeModeState evolve(const ThreeModeState&, double, Coupling,
                               BlockCache&);

  BlockMap blocks_;
  double trunc_error_ = 0.0;
};

/// exp(-i tau H) applied block by block through the cached
/// eigendecompositions. tau may be negative. Block support is unchanged.
ThreeModeState evolve(const ThreeModeState& state, double tau,
                      Coupling coupling = Coupling::trilinear,
                      BlockCache& cache = BlockCache::global());

/// Evolution under the ideal number-recombination Hamiltonian.
inline ThreeModeState evolve_pnd(const ThreeModeState& state, double tau) {
  return evolve(state, tau, Coupling::number_recombination);
}

}  // namespace triwave

#endif  // TRIWAVE_EVOLUTION_HPP
