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

#include "triwave/fock_blocks.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

#include "triwave/error.hpp"
#include "triwave/tridiagonal.hpp"

namespace triwave {

void validate_block(BlockIndex b) {
  if (b.s < 0 || b.k < 0 || b.k > b.s) {
    throw InvalidBlockIndex("invalid block index (s=" + std::to_string(b.s) +
                            ", k=" + std::to_string(b.k) +
                            "): need 0 <= k <= s");
  }
}

int block_dimension(int s, int k) {
  validate_block({s, k});
  return std::min(k, s - k) + 1;
}

BlockCoordinate fock_to_block(FockTriple t) {
  if (t.n_a < 0 || t.n_b < 0 || t.n_c < 0) {
    throw InvalidInput("fock_to_block: occupations must be non-negative");
  }
  return {{t.n_a + t.n_b + 2 * t.n_c, t.n_a + t.n_c}, t.n_c};
}

FockTriple block_to_fock(BlockIndex b, int n) {
  const int d = block_dimension(b);
  if (n < 0 || n >= d) {
    throw InvalidLocalIndex("local index " + std::to_string(n) +
                            " outside block of dimension " + std::to_string(d));
  }
  return {b.k - n, b.s - b.k - n, n};
}

std::vector<double> trilinear_offdiag(BlockIndex b) {
  const int d = block_dimension(b);
  std::vector<double> off(d - 1);
  for (int n = 0; n + 1 < d; ++n) {
    off[n] = std::sqrt(static_cast<double>(b.k - n) * (b.s - b.k - n) * (n + 1));
  }
  return off;
}

std::vector<double> recombination_offdiag(BlockIndex b) {
  const int d = block_dimension(b);
  std::vector<double> off(d - 1);
  for (int n = 0; n + 1 < d; ++n) {
    off[n] = std::sqrt(static_cast<double>(b.k - n) * (n + 1));
  }
  return off;
}

BlockHamiltonian::BlockHamiltonian(BlockIndex index, Coupling coupling)
    : index_(index), coupling_(coupling) {
  offdiag_ = coupling == Coupling::trilinear ? trilinear_offdiag(index)
                                             : recombination_offdiag(index);
  const std::vector<double> diag(offdiag_.size() + 1, 0.0);
  TridiagonalEigen eig = tridiagonal_eigen(diag, offdiag_);
  eigenvalues_ = std::move(eig.eigenvalues);
  eigenvectors_ = std::move(eig.eigenvectors);
}

Eigen::MatrixXd BlockHamiltonian::matrix() const {
  const int d = dimension();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
  for (int n = 0; n + 1 < d; ++n) {
    h(n, n + 1) = offdiag_[n];
    h(n + 1, n) = offdiag_[n];
  }
  return h;
}

BlockHamiltonian build_block_hamiltonian(BlockIndex b) {
  return BlockHamiltonian(b, Coupling::trilinear);
}

BlockHamiltonian build_pnd_block_hamiltonian(BlockIndex b) {
  return BlockHamiltonian(b, Coupling::number_recombination);
}

BlockCache::Entry BlockCache::get(BlockIndex b, Coupling coupling) {
  const Key key{b, coupling};
  {
    std::shared_lock lock(mutex_);
    if (auto it = entries_.find(key); it != entries_.end()) {
      return it->second;
    }
  }
  auto fresh = std::make_shared<const BlockHamiltonian>(b, coupling);
  std::unique_lock lock(mutex_);
  auto [it, inserted] = entries_.try_emplace(key, std::move(fresh));
  return it->second;
}

std::size_t BlockCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

void BlockCache::clear() {
  std::unique_lock lock(mutex_);
  entries_.clear();
}

BlockCache& BlockCache::global() {
  static BlockCache cache;
  return cache;
}

}  // namespace triwave
