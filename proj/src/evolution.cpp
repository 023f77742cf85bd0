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

#include "triwave/evolution.hpp"

#include <cmath>
#include <string>

#include "triwave/error.hpp"

namespace triwave {

ThreeModeState::ThreeModeState() {
  Eigen::VectorXcd v(1);
  v[0] = 1.0;
  blocks_.emplace(BlockIndex{0, 0}, std::move(v));
}

ThreeModeState ThreeModeState::from_blocks(BlockMap blocks,
                                           double trunc_error) {
  if (!(trunc_error >= 0.0)) {
    throw InvalidInput("trunc_error must be non-negative");
  }
  double norm2 = 0.0;
  for (const auto& [b, v] : blocks) {
    const int d = block_dimension(b);
    if (v.size() != d) {
      throw InvalidInput("block (" + std::to_string(b.s) + "," +
                         std::to_string(b.k) + ") expects " +
                         std::to_string(d) + " amplitudes, got " +
                         std::to_string(v.size()));
    }
    norm2 += v.squaredNorm();
  }
  if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
    throw InvalidInput("state has zero or non-finite norm");
  }
  const double scale = 1.0 / std::sqrt(norm2);
  for (auto& [b, v] : blocks) v *= scale;
  return ThreeModeState(std::move(blocks), trunc_error);
}

ThreeModeState ThreeModeState::from_fock(
    std::span<const std::pair<FockTriple, complex>> amplitudes,
    double trunc_error) {
  BlockMap blocks;
  for (const auto& [t, amp] : amplitudes) {
    const BlockCoordinate pos = fock_to_block(t);
    auto [it, inserted] = blocks.try_emplace(pos.block);
    if (inserted) {
      it->second = Eigen::VectorXcd::Zero(block_dimension(pos.block));
    }
    it->second[pos.local] += amp;
  }
  return from_blocks(std::move(blocks), trunc_error);
}

ThreeModeState ThreeModeState::fock(FockTriple t) {
  const std::pair<FockTriple, complex> one{t, 1.0};
  return from_fock(std::span(&one, 1));
}

complex ThreeModeState::amplitude(FockTriple t) const {
  const BlockCoordinate pos = fock_to_block(t);
  auto it = blocks_.find(pos.block);
  return it == blocks_.end() ? complex{} : it->second[pos.local];
}

double ThreeModeState::norm() const {
  double norm2 = 0.0;
  for (const auto& [b, v] : blocks_) norm2 += v.squaredNorm();
  return std::sqrt(norm2);
}

int ThreeModeState::max_n_c() const {
  int best = 0;
  for (const auto& [b, v] : blocks_) {
    for (Eigen::Index n = v.size() - 1; n > best; --n) {
      if (v[n] != complex{}) {
        best = static_cast<int>(n);
        break;
      }
    }
  }
  return best;
}

ThreeModeState evolve(const ThreeModeState& state, double tau,
                      Coupling coupling, BlockCache& cache) {
  if (tau == 0.0) return state;
  ThreeModeState::BlockMap out;
  for (const auto& [b, v] : state.blocks()) {
    if (v.size() == 1) {
      // 1x1 blocks have a zero Hamiltonian.
      out.emplace(b, v);
      continue;
    }
    const auto h = cache.get(b, coupling);
    const Eigen::MatrixXd& vecs = h->eigenvectors();
    const Eigen::VectorXd& vals = h->eigenvalues();
    // Real and imaginary parts as two real columns: keeps both products
    // in real arithmetic.
    const Eigen::Index d = v.size();
    Eigen::MatrixXd parts(d, 2);
    parts.col(0) = v.real();
    parts.col(1) = v.imag();
    Eigen::MatrixXd coeff = vecs.transpose() * parts;
    for (Eigen::Index j = 0; j < d; ++j) {
      const complex z =
          std::polar(1.0, -tau * vals[j]) * complex(coeff(j, 0), coeff(j, 1));
      coeff(j, 0) = z.real();
      coeff(j, 1) = z.imag();
    }
    parts.noalias() = vecs * coeff;
    Eigen::VectorXcd w(d);
    w.real() = parts.col(0);
    w.imag() = parts.col(1);
    out.emplace(b, std::move(w));
  }
  return ThreeModeState(std::move(out), state.trunc_error());
}

}  // namespace triwave
