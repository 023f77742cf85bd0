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

#include "triwave/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <utility>

#include "triwave/error.hpp"
#include "triwave/optimize.hpp"
#include "triwave/states.hpp"

namespace triwave {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Amplitudes regrouped by the traced pair. A family collects every basis
// state with the same n_b - n_a; row n_a, column n_c.
using PairRows =
    Eigen::Matrix<complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct PairFamily {
  PairRows rows;
  std::vector<int> row_length;  // one past the last non-zero column
};

std::vector<PairFamily> pair_families(const ThreeModeState& state) {
  std::map<int, std::pair<int, int>> extent;  // delta -> (max n_a, max n_c)
  state.for_each([&](FockTriple t, complex amp) {
    if (amp == complex{}) return;
    auto& [ra, rc] = extent.try_emplace(t.n_b - t.n_a, 0, 0).first->second;
    ra = std::max(ra, t.n_a);
    rc = std::max(rc, t.n_c);
  });
  std::map<int, std::size_t> slot;
  std::vector<PairFamily> families;
  for (const auto& [delta, e] : extent) {
    slot[delta] = families.size();
    families.push_back(
        {PairRows::Zero(e.first + 1, e.second + 1), std::vector<int>(e.first + 1, 0)});
  }
  state.for_each([&](FockTriple t, complex amp) {
    if (amp == complex{}) return;
    PairFamily& f = families[slot[t.n_b - t.n_a]];
    f.rows(t.n_a, t.n_c) = amp;
    f.row_length[t.n_a] = std::max(f.row_length[t.n_a], t.n_c + 1);
  });
  return families;
}

// Hermitian Toeplitz-style series  f(theta) = h_0 + 2 Re sum_{d>0}
// e^{-i d theta} h_d, shared by the phase density and the PCS overlap.
class LagSeries {
 public:
  explicit LagSeries(std::vector<complex> lags) : lags_(std::move(lags)) {}

  double operator()(double theta) const {
    const complex step = std::polar(1.0, -theta);
    complex rot = 1.0;
    complex acc = 0.0;
    for (std::size_t d = 1; d < lags_.size(); ++d) {
      rot *= step;
      acc += rot * lags_[d];
    }
    return lags_[0].real() + 2.0 * acc.real();
  }

  // Grid maximum refined on the two neighbouring cells.
  ScalarMaximum maximize(int grid_points) const {
    const double h = kTwoPi / grid_points;
    int best = 0;
    double best_value = (*this)(0.0);
    for (int j = 1; j < grid_points; ++j) {
      const double v = (*this)(j * h);
      if (v > best_value) {
        best = j;
        best_value = v;
      }
    }
    const double centre = best * h;
    const ScalarMaximum refined = parabolic_maximize(
        [this](double x) { return (*this)(x); }, centre - h, centre + h,
        1e-12);
    if (refined.value > best_value) return refined;
    return {centre, best_value};
  }

 private:
  std::vector<complex> lags_;
};

// h_d = sum_m w^(2m+d) rho_{m+d,m}
std::vector<complex> weighted_lags(const Eigen::MatrixXcd& rho, double w) {
  const Eigen::Index dim = rho.rows();
  std::vector<double> powers(dim, 1.0);
  for (Eigen::Index n = 1; n < dim; ++n) powers[n] = powers[n - 1] * w;
  std::vector<complex> lags(dim);
  for (Eigen::Index d = 0; d < dim; ++d) {
    for (Eigen::Index m = 0; m + d < dim; ++m) {
      lags[d] += powers[m + d] * powers[m] * rho(m + d, m);
    }
  }
  return lags;
}

double clamp_overlap(double squared) {
  return std::sqrt(std::max(0.0, squared));
}

}  // namespace

ReducedDensityMatrix::ReducedDensityMatrix(Eigen::MatrixXcd matrix)
    : matrix_(std::move(matrix)) {
  if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols()) {
    throw InvalidInput("density matrix must be square and non-empty");
  }
}

ReducedDensityMatrix::Diagnostics ReducedDensityMatrix::diagnostics() const {
  Diagnostics d;
  d.hermiticity_error = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
  d.trace_error = std::abs(trace() - 1.0);
  const Eigen::MatrixXcd herm = 0.5 * (matrix_ + matrix_.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(herm,
                                                      Eigen::EigenvaluesOnly);
  d.min_eigenvalue = eig.eigenvalues().minCoeff();
  return d;
}

double mean_photon(const ThreeModeState& state, Mode mode) {
  double total = 0.0;
  state.for_each([&](FockTriple t, complex amp) {
    const int n = mode == Mode::a ? t.n_a : mode == Mode::b ? t.n_b : t.n_c;
    total += n * std::norm(amp);
  });
  return total;
}

double overlap_with_pair_reference(const ThreeModeState& state,
                                   const PairAmplitude& reference_ab) {
  std::vector<complex> acc(state.max_n_c() + 1);
  state.for_each([&](FockTriple t, complex amp) {
    if (amp == complex{}) return;
    acc[t.n_c] += std::conj(reference_ab(t.n_a, t.n_b)) * amp;
  });
  double sum = 0.0;
  for (const complex& x : acc) sum += std::norm(x);
  return clamp_overlap(sum);
}

double overlap_with_mode_c_reference(const ThreeModeState& state,
                                     std::span<const complex> reference_c) {
  std::map<std::pair<int, int>, complex> acc;
  const int len = static_cast<int>(reference_c.size());
  state.for_each([&](FockTriple t, complex amp) {
    if (t.n_c < len) acc[{t.n_a, t.n_b}] += std::conj(reference_c[t.n_c]) * amp;
  });
  double sum = 0.0;
  for (const auto& [key, x] : acc) sum += std::norm(x);
  return clamp_overlap(sum);
}

ReducedDensityMatrix reduce_mode_c(const ThreeModeState& state,
                                   std::optional<int> cutoff) {
  const int support = state.max_n_c();
  const int top = cutoff.value_or(support);
  if (top < support) {
    throw InvalidInput("reduce_mode_c: cutoff " + std::to_string(top) +
                       " below the state's n_c support " +
                       std::to_string(support));
  }
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(top + 1, top + 1);
  for (const PairFamily& f : pair_families(state)) {
    const Eigen::Index cols = f.rows.cols();
    rho.topLeftCorner(cols, cols).noalias() +=
        f.rows.transpose() * f.rows.conjugate();
  }
  return ReducedDensityMatrix(std::move(rho));
}

double conversion_rate_down(const ThreeModeState& state_out,
                            double pump_energy) {
  if (!(pump_energy > 0.0)) {
    throw InvalidParameter("pump energy must be positive");
  }
  return 0.5 * (mean_photon(state_out, Mode::a) +
                mean_photon(state_out, Mode::b)) /
         pump_energy;
}

double conversion_rate_up(const ThreeModeState& state_out,
                          double twin_beam_energy) {
  if (!(twin_beam_energy > 0.0)) {
    throw InvalidParameter("twin-beam energy must be positive");
  }
  return 2.0 * mean_photon(state_out, Mode::c) / twin_beam_energy;
}

double purity(const ReducedDensityMatrix& rho) {
  return rho.matrix().squaredNorm();
}

double phase_density(const ReducedDensityMatrix& rho, double phi) {
  return LagSeries(weighted_lags(rho.matrix(), 1.0))(phi) / kTwoPi;
}

std::vector<double> phase_distribution(const ReducedDensityMatrix& rho,
                                       int grid_points) {
  if (grid_points < 256) {
    throw ConfigError("phase grid needs at least 256 points, got " +
                      std::to_string(grid_points));
  }
  const LagSeries series(weighted_lags(rho.matrix(), 1.0));
  std::vector<double> p(grid_points);
  for (int j = 0; j < grid_points; ++j) {
    p[j] = series(kTwoPi * j / grid_points) / kTwoPi;
  }
  return p;
}

double reciprocal_peak_likelihood(const ReducedDensityMatrix& rho,
                                  int grid_points) {
  if (grid_points < 256) {
    throw ConfigError("phase grid needs at least 256 points, got " +
                      std::to_string(grid_points));
  }
  const LagSeries series(weighted_lags(rho.matrix(), 1.0));
  return kTwoPi / series.maximize(grid_points).value;
}

MatchedPcs matched_pcs_overlap(const ThreeModeState& state, int phase_grid) {
  if (phase_grid < 4) throw ConfigError("PCS phase grid too small");
  const double nbar = mean_photon(state, Mode::c);
  const int top = state.max_n_c();
  if (!(nbar > 0.0)) {
    const complex vacuum[] = {1.0};
    return {overlap_with_mode_c_reference(state, vacuum), 0.0, false};
  }
  const double r = pcs_modulus_for_energy(nbar);

  std::vector<double> powers(top + 1, 1.0);
  for (int n = 1; n <= top; ++n) powers[n] = powers[n - 1] * r;
  std::vector<complex> lags(top + 1);
  std::vector<complex> u(top + 1);
  for (const PairFamily& f : pair_families(state)) {
    for (Eigen::Index j = 0; j < f.rows.rows(); ++j) {
      const int len = f.row_length[j];
      for (int n = 0; n < len; ++n) u[n] = powers[n] * f.rows(j, n);
      for (int d = 0; d < len; ++d) {
        complex acc = 0.0;
        for (int m = 0; m + d < len; ++m) acc += u[m + d] * std::conj(u[m]);
        lags[d] += acc;
      }
    }
  }

  const ScalarMaximum best = LagSeries(std::move(lags)).maximize(phase_grid);
  const complex lambda = std::polar(r, best.x);
  const auto reference = make_pcs_amplitudes(lambda, top);
  return {overlap_with_mode_c_reference(state, reference), lambda, true};
}

MatchedPcs matched_pcs_overlap(const ReducedDensityMatrix& rho,
                               int phase_grid) {
  if (phase_grid < 4) throw ConfigError("PCS phase grid too small");
  const Eigen::MatrixXcd& m = rho.matrix();
  double nbar = 0.0;
  for (Eigen::Index n = 1; n < m.rows(); ++n) nbar += n * m(n, n).real();
  if (!(nbar > 0.0)) {
    return {clamp_overlap(m(0, 0).real()), 0.0, false};
  }
  const double r = pcs_modulus_for_energy(nbar);
  const ScalarMaximum best =
      LagSeries(weighted_lags(m, r)).maximize(phase_grid);
  const complex lambda = std::polar(r, best.x);
  const auto c = make_pcs_amplitudes(lambda, rho.cutoff());
  const Eigen::Map<const Eigen::VectorXcd> ket(c.data(),
                                               static_cast<Eigen::Index>(c.size()));
  return {clamp_overlap((ket.adjoint() * m * ket)(0, 0).real()), lambda, true};
}

}  // namespace triwave
