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

#include "triwave/states.hpp"

#include <cmath>
#include <string>

#include "triwave/error.hpp"

namespace triwave {

void validate_truncation(double eps) {
  if (!(eps > 0.0 && eps <= 1e-4)) {
    throw ConfigError("truncation eps must lie in (0, 1e-4], got " +
                      std::to_string(eps));
  }
}

ThreeModeState make_coherent_pump(complex alpha, double eps) {
  validate_truncation(eps);
  const double mean = std::norm(alpha);
  if (!std::isfinite(mean)) {
    throw InvalidParameter("pump amplitude must be finite");
  }
  if (mean == 0.0) return ThreeModeState{};

  const double log_abs = std::log(std::abs(alpha));
  const double phase = std::arg(alpha);

  // Poisson weights from log-factorials; the tail is tracked as 1 - sum.
  std::vector<complex> amps;
  double kept = 0.0;
  for (int n = 0;; ++n) {
    const double log_p = -mean + 2.0 * n * log_abs - std::lgamma(n + 1.0);
    const double p = std::exp(log_p);
    kept += p;
    amps.push_back(std::polar(std::exp(0.5 * log_p), n * phase));
    if (1.0 - kept < eps) break;
  }

  ThreeModeState::BlockMap blocks;
  for (int n = 0; n < static_cast<int>(amps.size()); ++n) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n + 1);
    v[n] = amps[n];
    blocks.emplace(BlockIndex{2 * n, n}, std::move(v));
  }
  return ThreeModeState::from_blocks(std::move(blocks),
                                     std::max(0.0, 1.0 - kept));
}

ThreeModeState make_twin_beam(complex chi, double eps) {
  validate_truncation(eps);
  const double r2 = std::norm(chi);
  if (!(r2 < 1.0)) {
    throw InvalidParameter("twin-beam parameter needs |chi| < 1, got |chi| = " +
                           std::to_string(std::abs(chi)));
  }
  if (r2 == 0.0) return ThreeModeState{};

  // P(n > N) = |chi|^(2(N+1)).
  int last = 0;
  double tail = r2;
  while (tail >= eps) {
    ++last;
    tail *= r2;
  }

  const double norm0 = std::sqrt(1.0 - r2);
  ThreeModeState::BlockMap blocks;
  complex power = 1.0;
  for (int n = 0; n <= last; ++n) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n + 1);
    v[0] = norm0 * power;
    blocks.emplace(BlockIndex{2 * n, n}, std::move(v));
    power *= chi;
  }
  return ThreeModeState::from_blocks(std::move(blocks), tail);
}

complex predicted_twin_beam_param(complex alpha, double tau) {
  const complex minus_i{0.0, -1.0};
  return minus_i * std::tanh(tau * std::abs(alpha)) *
         std::polar(1.0, std::arg(alpha));
}

std::vector<complex> make_pcs_amplitudes(complex lambda, int cutoff) {
  const double r2 = std::norm(lambda);
  if (!(r2 < 1.0)) {
    throw InvalidParameter("PCS parameter needs |lambda| < 1, got |lambda| = " +
                           std::to_string(std::abs(lambda)));
  }
  if (cutoff < 0) throw InvalidInput("PCS cutoff must be non-negative");
  std::vector<complex> c(cutoff + 1);
  complex power = std::sqrt(1.0 - r2);
  for (auto& x : c) {
    x = power;
    power *= lambda;
  }
  return c;
}

double twin_beam_energy(complex chi) {
  const double r2 = std::norm(chi);
  if (!(r2 < 1.0)) throw InvalidParameter("twin-beam parameter needs |chi| < 1");
  return 2.0 * r2 / (1.0 - r2);
}

double twin_beam_modulus_for_energy(double n_in) {
  if (!(n_in >= 0.0) || !std::isfinite(n_in)) {
    throw InvalidParameter("twin-beam energy must be finite and >= 0");
  }
  return std::sqrt(n_in / (n_in + 2.0));
}

double pcs_modulus_for_energy(double n) {
  if (!(n >= 0.0) || !std::isfinite(n)) {
    throw InvalidParameter("PCS energy must be finite and >= 0");
  }
  return std::sqrt(n / (1.0 + n));
}

}  // namespace triwave
