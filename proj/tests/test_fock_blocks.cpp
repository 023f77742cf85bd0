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
#include <set>
#include <thread>
#include <vector>

#include "doctest.h"
#include "support/oracles.hpp"
#include "triwave/error.hpp"

using namespace triwave;

namespace {

// Off-diagonal entries obtained by applying the ladder operators to the
// ordered block basis, independent of the closed-form formulas.
std::vector<double> ladder_offdiag(BlockIndex b, Coupling coupling) {
  const int d = std::min(b.k, b.s - b.k) + 1;
  std::vector<double> off;
  for (int n = 0; n + 1 < d; ++n) {
    const FockTriple lo{b.k - n, b.s - b.k - n, n};
    const FockTriple hi{b.k - n - 1, b.s - b.k - n - 1, n + 1};
    off.push_back(coupling == Coupling::trilinear
                      ? testing::trilinear_element(hi, lo)
                      : testing::recombination_element(hi, lo));
  }
  return off;
}

double max_abs_offdiag(const BlockHamiltonian& h) {
  double m = 0.0;
  for (double x : h.offdiag()) m = std::max(m, std::abs(x));
  return m;
}

void check_decomposition(const BlockHamiltonian& h) {
  const int d = h.dimension();
  const Eigen::MatrixXd& v = h.eigenvectors();
  const double ortho =
      (v.transpose() * v - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff();
  CHECK(ortho <= 1e-12 * d);
  const Eigen::MatrixXd rebuilt = v * h.eigenvalues().asDiagonal() * v.transpose();
  const double scale = std::max(max_abs_offdiag(h), 1.0);
  CHECK((rebuilt - h.matrix()).cwiseAbs().maxCoeff() <= 1e-12 * scale * std::max(d, 1));
}

}  // namespace

TEST_CASE("block_dimension") {
  CHECK(block_dimension(0, 0) == 1);
  CHECK(block_dimension(2, 1) == 2);
  CHECK(block_dimension(4, 2) == 3);
  CHECK(block_dimension(7, 0) == 1);
  CHECK(block_dimension(7, 7) == 1);
  CHECK_THROWS_AS(block_dimension(3, 4), InvalidBlockIndex);
  CHECK_THROWS_AS(block_dimension(3, -1), InvalidBlockIndex);
}

TEST_CASE("fock_to_block and block_to_fock examples") {
  CHECK(fock_to_block({1, 1, 0}) == BlockCoordinate{{2, 1}, 0});
  CHECK(fock_to_block({0, 0, 1}) == BlockCoordinate{{2, 1}, 1});
  CHECK(fock_to_block({2, 1, 3}) == BlockCoordinate{{9, 5}, 3});

  CHECK(block_to_fock({2, 1}, 1) == FockTriple{0, 0, 1});
  CHECK(block_to_fock({4, 2}, 0) == FockTriple{2, 2, 0});
  CHECK(block_to_fock({9, 5}, 3) == FockTriple{2, 1, 3});

  CHECK_THROWS_AS(block_to_fock({4, 2}, 3), InvalidLocalIndex);
  CHECK_THROWS_AS(block_to_fock({4, 2}, -1), InvalidLocalIndex);
  CHECK_THROWS_AS(block_to_fock({2, 3}, 0), InvalidBlockIndex);
}

TEST_CASE("Fock coordinates round-trip for occupations up to 30") {
  for (int a = 0; a <= 30; ++a) {
    for (int b = 0; b <= 30; ++b) {
      for (int c = 0; c <= 30; ++c) {
        const FockTriple t{a, b, c};
        const BlockCoordinate pos = fock_to_block(t);
        REQUIRE(block_to_fock(pos.block, pos.local) == t);
      }
    }
  }
}

TEST_CASE("blocks of fixed s partition the Fock states with that s") {
  for (int s = 0; s <= 30; ++s) {
    std::set<FockTriple> from_blocks;
    std::size_t count = 0;
    for (int k = 0; k <= s; ++k) {
      for (int n = 0; n < block_dimension(s, k); ++n) {
        from_blocks.insert(block_to_fock({s, k}, n));
        ++count;
      }
    }
    std::set<FockTriple> direct;
    for (int c = 0; 2 * c <= s; ++c) {
      for (int a = 0; a + 2 * c <= s; ++a) direct.insert({a, s - 2 * c - a, c});
    }
    CHECK(count == from_blocks.size());
    CHECK(from_blocks == direct);
  }
}

TEST_CASE("trilinear block Hamiltonian examples") {
  CHECK(build_block_hamiltonian({0, 0}).offdiag().empty());
  CHECK(build_block_hamiltonian({0, 0}).dimension() == 1);

  const auto h21 = build_block_hamiltonian({2, 1});
  REQUIRE(h21.offdiag().size() == 1);
  CHECK(h21.offdiag()[0] == doctest::Approx(1.0).epsilon(1e-15));

  const auto h42 = build_block_hamiltonian({4, 2});
  const auto expected = ladder_offdiag({4, 2}, Coupling::trilinear);
  REQUIRE(h42.offdiag().size() == 2);
  CHECK(expected[0] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(expected[1] == doctest::Approx(1.4142135623730951).epsilon(1e-15));
  CHECK(h42.offdiag()[0] == doctest::Approx(expected[0]).epsilon(1e-15));
  CHECK(h42.offdiag()[1] == doctest::Approx(expected[1]).epsilon(1e-15));
  CHECK(h42.matrix().diagonal().isZero(0.0));
}

TEST_CASE("recombination block Hamiltonian examples") {
  const auto h21 = build_pnd_block_hamiltonian({2, 1});
  CHECK(h21.offdiag()[0] == doctest::Approx(1.0).epsilon(1e-15));

  const auto h42 = build_pnd_block_hamiltonian({4, 2});
  CHECK(h42.offdiag()[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(h42.offdiag()[1] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

  const auto h63 = build_pnd_block_hamiltonian({6, 3});
  const auto expected = ladder_offdiag({6, 3}, Coupling::number_recombination);
  const double hand[] = {std::sqrt(3.0), 2.0, std::sqrt(3.0)};
  for (int n = 0; n < 3; ++n) {
    CHECK(expected[n] == doctest::Approx(hand[n]).epsilon(1e-15));
    CHECK(h63.offdiag()[n] == doctest::Approx(hand[n]).epsilon(1e-15));
  }
}

TEST_CASE("block matrix elements match the ladder-operator rules") {
  for (int s = 0; s <= 24; ++s) {
    for (int k = 0; k <= s; ++k) {
      for (Coupling coupling : {Coupling::trilinear, Coupling::number_recombination}) {
        const BlockHamiltonian h({s, k}, coupling);
        const auto expected = ladder_offdiag({s, k}, coupling);
        REQUIRE(h.offdiag().size() == expected.size());
        for (std::size_t n = 0; n < expected.size(); ++n) {
          CHECK(h.offdiag()[n] == doctest::Approx(expected[n]).epsilon(1e-14));
        }
      }
    }
  }
}

TEST_CASE("trilinear and recombination blocks coincide when n_b <= 1") {
  // The two couplings differ by a factor sqrt(n_b), so they agree exactly
  // on the blocks whose basis states carry at most one b photon, e.g. the
  // single-pair block |1,1,0> <-> |0,0,1>.
  for (int s = 0; s <= 40; ++s) {
    for (int k = std::max(0, s - 1); k <= s; ++k) {
      CHECK(build_block_hamiltonian({s, k}).offdiag() ==
            build_pnd_block_hamiltonian({s, k}).offdiag());
    }
  }
  CHECK(build_block_hamiltonian({2, 1}).offdiag() ==
        build_pnd_block_hamiltonian({2, 1}).offdiag());
  // min(k, s-k) = 1 alone is not enough: |1, 4, 0> couples with sqrt(4).
  CHECK(build_block_hamiltonian({5, 1}).offdiag()[0] ==
        doctest::Approx(2.0).epsilon(1e-15));
  CHECK(build_pnd_block_hamiltonian({5, 1}).offdiag()[0] ==
        doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("eigendecomposition residuals stay within bounds") {
  for (BlockIndex b : {BlockIndex{2, 1}, BlockIndex{9, 5}, BlockIndex{40, 17},
                       BlockIndex{200, 100}, BlockIndex{400, 200}}) {
    check_decomposition(build_block_hamiltonian(b));
    check_decomposition(build_pnd_block_hamiltonian(b));
  }
}

TEST_CASE("block cache shares entries across threads") {
  BlockCache cache;
  std::vector<BlockCache::Entry> seen(8);
  {
    std::vector<std::jthread> threads;
    for (int t = 0; t < 8; ++t) {
      threads.emplace_back([&, t] { seen[t] = cache.get({60, 30}); });
    }
  }
  CHECK(cache.size() == 1);
  for (const auto& e : seen) {
    CHECK(e == seen[0]);
    CHECK(e->dimension() == 31);
  }
  CHECK(cache.get({60, 30}, Coupling::number_recombination) != seen[0]);
  CHECK(cache.size() == 2);
  cache.clear();
  CHECK(cache.size() == 0);
}
