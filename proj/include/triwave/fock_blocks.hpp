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

#ifndef TRIWAVE_FOCK_BLOCKS_HPP
#define TRIWAVE_FOCK_BLOCKS_HPP

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <shared_mutex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace triwave {

/// Occupation numbers |n_a, n_b, n_c> of the three coupled modes.
struct FockTriple {
  int n_a = 0;
  int n_b = 0;
  int n_c = 0;

  auto operator<=>(const FockTriple&) const = default;
};

/// Label of an invariant subspace of the three-wave Hamiltonian.
///
/// `s` is the eigenvalue of n_a + n_b + 2 n_c and `k` the eigenvalue of
/// n_a + n_c. Both are conserved, so the Hamiltonian never couples states
/// carrying different labels.
struct BlockIndex {
  int s = 0;
  int k = 0;

  auto operator<=>(const BlockIndex&) const = default;
};

/// Position of a Fock triple inside its block; the local index is n_c.
struct BlockCoordinate {
  BlockIndex block;
  int local = 0;

  bool operator==(const BlockCoordinate&) const = default;
};

/// Number of Fock states in block (s, k): min(k, s - k) + 1.
int block_dimension(int s, int k);
inline int block_dimension(BlockIndex b) { return block_dimension(b.s, b.k); }

/// Throws InvalidBlockIndex unless 0 <= k <= s.
void validate_block(BlockIndex b);

BlockCoordinate fock_to_block(FockTriple t);

/// Inverse of fock_to_block: returns |k - n, s - k - n, n>.
FockTriple block_to_fock(BlockIndex b, int n);

/// Which interaction generates the block matrix.
enum class Coupling {
  /// a b c^dag + a^dag b^dag c
  trilinear,
  /// Ideal photon-number recombination, where the factor (b^dag b + 1)^(-1/2)
  /// removes one power of sqrt(n_b) from every matrix element.
  number_recombination,
};

/// Real symmetric tridiagonal Hamiltonian of one block with its
/// eigendecomposition. Immutable once built.
class BlockHamiltonian {
 public:
  BlockHamiltonian(BlockIndex index, Coupling coupling);

  BlockIndex index() const { return index_; }
  Coupling coupling() const { return coupling_; }
  int dimension() const { return static_cast<int>(eigenvalues_.size()); }

  /// offdiag()[n] couples local states n and n + 1; the diagonal is zero.
  const std::vector<double>& offdiag() const { return offdiag_; }
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  const Eigen::MatrixXd& eigenvectors() const { return eigenvectors_; }

  /// Dense d x d form of the tridiagonal matrix.
  Eigen::MatrixXd matrix() const;

 private:
  BlockIndex index_;
  Coupling coupling_;
  std::vector<double> offdiag_;
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXd eigenvectors_;
};

/// Off-diagonal elements of the trilinear block:
/// sqrt((k - n)(s - k - n)(n + 1)), n = 0 .. d - 2.
std::vector<double> trilinear_offdiag(BlockIndex b);

/// Off-diagonal elements of the recombination block: sqrt((k - n)(n + 1)).
std::vector<double> recombination_offdiag(BlockIndex b);

BlockHamiltonian build_block_hamiltonian(BlockIndex b);
BlockHamiltonian build_pnd_block_hamiltonian(BlockIndex b);

/// Thread-safe store of block eigendecompositions, keyed by block label and
/// coupling. Concurrent readers share entries; a miss may be computed twice
/// by racing threads but only the first result is published.
class BlockCache {
 public:
  using Entry = std::shared_ptr<const BlockHamiltonian>;

  Entry get(BlockIndex b, Coupling coupling = Coupling::trilinear);

  std::size_t size() const;
  void clear();

  /// Process-wide cache used by the evolution routines.
  static BlockCache& global();

 private:
  using Key = std::pair<BlockIndex, Coupling>;

  mutable std::shared_mutex mutex_;
  std::map<Key, Entry> entries_;
};

}  // namespace triwave

#endif  // TRIWAVE_FOCK_BLOCKS_HPP
