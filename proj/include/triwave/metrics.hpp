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

#ifndef TRIWAVE_METRICS_HPP
#define TRIWAVE_METRICS_HPP

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "triwave/evolution.hpp"

namespace triwave {

enum class Mode { a, b, c };

/// Density matrix of mode c in the Fock basis |0> .. |cutoff>.
class ReducedDensityMatrix {
 public:
  ReducedDensityMatrix() : matrix_(Eigen::MatrixXcd::Ones(1, 1)) {}
  /// Throws InvalidInput for a non-square or empty matrix.
  explicit ReducedDensityMatrix(Eigen::MatrixXcd matrix);

  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  int cutoff() const { return static_cast<int>(matrix_.rows()) - 1; }
  double trace() const { return matrix_.trace().real(); }

  /// max |rho - rho^dag|, |Tr rho - 1| and the smallest eigenvalue.
  struct Diagnostics {
    double hermiticity_error = 0.0;
    double trace_error = 0.0;
    double min_eigenvalue = 0.0;
  };
  Diagnostics diagnostics() const;

 private:
  Eigen::MatrixXcd matrix_;
};

double mean_photon(const ThreeModeState& state, Mode mode);

/// Ket coefficients of a pure reference state on modes (a, b).
using PairAmplitude = std::function<complex(int n_a, int n_b)>;

/// sqrt(<ref| rho_ab |ref>) with mode c traced out, computed from the
/// amplitudes directly.
double overlap_with_pair_reference(const ThreeModeState& state,
                                   const PairAmplitude& reference_ab);

/// sqrt(<ref| rho_c |ref>) with modes (a, b) traced out. Fock components of
/// the state beyond the reference length contribute nothing.
double overlap_with_mode_c_reference(const ThreeModeState& state,
                                     std::span<const complex> reference_c);

/// Partial trace over (a, b). The default cutoff is the largest occupied
/// n_c; a smaller explicit cutoff throws InvalidInput.
ReducedDensityMatrix reduce_mode_c(const ThreeModeState& state,
                                   std::optional<int> cutoff = std::nullopt);

/// (<n_a> + <n_b>) / (2 pump_energy).
double conversion_rate_down(const ThreeModeState& state_out,
                            double pump_energy);

/// 2 <n_c> / twin_beam_energy.
double conversion_rate_up(const ThreeModeState& state_out,
                          double twin_beam_energy);

/// Tr(rho^2).
double purity(const ReducedDensityMatrix& rho);

/// Canonical phase density (2 pi)^-1 sum_{n,m} e^{-i(n-m) phi} rho_nm at phi.
double phase_density(const ReducedDensityMatrix& rho, double phi);

/// phase_density on the grid phi_j = 2 pi j / grid_points.
/// Throws ConfigError for grid_points < 256.
std::vector<double> phase_distribution(const ReducedDensityMatrix& rho,
                                       int grid_points);

inline constexpr int kDefaultPhaseGrid = 4096;

/// 1 / max_phi p(phi); the grid maximum is refined by parabolic
/// interpolation on the continuous density.
double reciprocal_peak_likelihood(const ReducedDensityMatrix& rho,
                                  int grid_points = kDefaultPhaseGrid);

struct MatchedPcs {
  double overlap = 0.0;
  complex lambda;
  /// False when the state has no photons in c and arg(lambda) is undefined.
  bool phase_defined = false;
};

inline constexpr int kDefaultPcsPhaseGrid = 1024;

/// Overlap with the phase-coherent state of equal <n_c>, maximized over
/// arg(lambda) on a grid followed by parabolic refinement.
MatchedPcs matched_pcs_overlap(const ThreeModeState& state,
                               int phase_grid = kDefaultPcsPhaseGrid);
MatchedPcs matched_pcs_overlap(const ReducedDensityMatrix& rho,
                               int phase_grid = kDefaultPcsPhaseGrid);

}  // namespace triwave

#endif  // TRIWAVE_METRICS_HPP
