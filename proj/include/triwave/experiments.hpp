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

#ifndef TRIWAVE_EXPERIMENTS_HPP
#define TRIWAVE_EXPERIMENTS_HPP

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "triwave/evolution.hpp"
#include "triwave/metrics.hpp"
#include "triwave/states.hpp"

namespace triwave {

/// One point of a tau sweep. Mean photon numbers refer to the evolved state;
/// `reference` is the twin-beam chi (stage 1) or matched PCS lambda
/// (stage 2). Absent optionals mark figures of merit that do not apply.
struct SweepRecord {
  double tau = 0.0;
  double overlap = 0.0;
  double eta = 0.0;
  std::optional<double> purity;
  std::optional<double> delta_phi;
  double n_a = 0.0;
  double n_b = 0.0;
  double n_c = 0.0;
  complex reference;
};

/// Called with (input, evolved, tau) for every evolved sweep point. May be
/// invoked from worker threads.
using EvolutionObserver =
    std::function<void(const ThreeModeState&, const ThreeModeState&, double)>;

struct SweepOptions {
  int phase_grid = kDefaultPhaseGrid;
  int pcs_phase_grid = kDefaultPcsPhaseGrid;
  /// Worker threads; 0 picks default_workers().
  int workers = 0;
  EvolutionObserver observer;
};

/// Coarse grid on (0, tau_max] followed by golden-section refinement.
struct TauSearch {
  double tau_max = 3.0;
  int coarse_points = 64;
  double tolerance = 1e-5;
};

struct OptimalTau {
  double tau = 0.0;
  double overlap = 0.0;
  double eta = 0.0;
  SweepRecord record;
};

/// y = prefactor * x^exponent, fitted in log-log space.
struct PowerLawFit {
  double prefactor = 0.0;
  double exponent = 0.0;
  double residual = 0.0;  // RMS of ln y - ln fit

  double operator()(double x) const;
};

/// Number of workers used when SweepOptions::workers is 0. Defaults to the
/// hardware concurrency; set_default_workers overrides it process-wide.
int default_workers();
void set_default_workers(int workers);

/// Down-conversion of vacuum by the coherent pump |0, 0, alpha>. Overlap is
/// taken against the twin beam predicted for each tau, eta is the
/// down-conversion rate, purity is that of the (a, b) marginal. delta_phi
/// is absent.
std::vector<SweepRecord> stage1_sweep(complex pump_alpha,
                                      std::span<const double> tau_grid,
                                      double eps = kDefaultTruncation,
                                      const SweepOptions& options = {});

/// Up-conversion of the twin beam |chi>. Overlap is the matched-PCS
/// overlap of mode c.
std::vector<SweepRecord> stage2_sweep(complex chi,
                                      std::span<const double> tau_grid,
                                      double eps = kDefaultTruncation,
                                      const SweepOptions& options = {});

/// Index of the highest interior local maximum of `values` (strictly above
/// its left neighbour, not below its right one); ties go to the smaller
/// index. Falls back to the first global maximum when there is none.
std::size_t interior_peak_index(std::span<const double> values);

/// Interaction time of maximum stage-2 overlap.
///
/// The overlap tends to 1 as tau -> 0 because both the output and its
/// matched PCS approach the vacuum, so the search takes the highest
/// interior local maximum of the coarse grid (ties toward smaller tau) and
/// only falls back to the grid maximum when no interior maximum exists.
/// Throws InvalidParameter for chi = 0.
OptimalTau find_optimal_tau(complex chi, double eps = kDefaultTruncation,
                            const TauSearch& search = {},
                            const SweepOptions& options = {});

/// Interaction time of maximum stage-1 conversion rate, same search rule.
OptimalTau find_max_conversion_tau(complex pump_alpha,
                                   double eps = kDefaultTruncation,
                                   const TauSearch& search = {},
                                   const SweepOptions& options = {});

/// Least squares line through (ln x, ln y). Needs at least three strictly
/// positive, finite points; throws InvalidInput otherwise.
PowerLawFit fit_power_law(std::span<const double> xs,
                          std::span<const double> ys);

/// Chained two-crystal scheme: the exact stage-1 output is split by the
/// pump-mode occupation into conditional (a, b) states, each is
/// up-converted with a fresh vacuum in c for tau2, and the reduced mode-c
/// states are summed with their weights.
ReducedDensityMatrix full_pipeline(complex pump_alpha, double tau1,
                                   double tau2,
                                   double eps = kDefaultTruncation,
                                   const SweepOptions& options = {});

struct ScalingPoint {
  double n_in = 0.0;
  double n_out = 0.0;
  double tau_opt = 0.0;
  double overlap = 0.0;
  double eta = 0.0;
  double purity = 0.0;
  double delta_phi = 0.0;
  complex lambda;
};

struct ScalingStudy {
  std::vector<ScalingPoint> points;
  PowerLawFit tau_vs_n_in;
  PowerLawFit tau_vs_n_out;
  PowerLawFit delta_phi_vs_n_out;
};

/// find_optimal_tau for each twin-beam energy (real positive chi) plus the
/// three power-law fits. Needs at least three energies, all positive.
ScalingStudy scaling_study(std::span<const double> n_in_values,
                           double eps = kDefaultTruncation,
                           const TauSearch& search = {},
                           const SweepOptions& options = {});

}  // namespace triwave

#endif  // TRIWAVE_EXPERIMENTS_HPP
