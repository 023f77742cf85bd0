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

#include "triwave/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <string>
#include <thread>

#include "parallel.hpp"
#include "triwave/error.hpp"
#include "triwave/optimize.hpp"

namespace triwave {

namespace {

std::atomic<int> g_default_workers{0};

int resolve_workers(const SweepOptions& options) {
  return options.workers > 0 ? options.workers : default_workers();
}

void notify(const SweepOptions& options, const ThreeModeState& in,
            const ThreeModeState& out, double tau) {
  if (options.observer) options.observer(in, out, tau);
}

// Stage-1 input and its bookkeeping shared by every tau.
struct PumpSetup {
  complex alpha;
  ThreeModeState input;
  double energy;
};

PumpSetup make_pump_setup(complex alpha, double eps) {
  if (std::norm(alpha) == 0.0) {
    throw InvalidParameter("pump amplitude must be non-zero");
  }
  ThreeModeState input = make_coherent_pump(alpha, eps);
  const double energy = mean_photon(input, Mode::c);
  return {alpha, std::move(input), energy};
}

double stage1_overlap(const ThreeModeState& out, complex chi) {
  int max_pair = 0;
  out.for_each([&](FockTriple t, complex) { max_pair = std::max(max_pair, t.n_a); });
  std::vector<complex> coeff(max_pair + 1);
  complex power = std::sqrt(1.0 - std::min(std::norm(chi), 1.0));
  for (auto& c : coeff) {
    c = power;
    power *= chi;
  }
  return overlap_with_pair_reference(out, [&](int n_a, int n_b) {
    return n_a == n_b ? coeff[n_a] : complex{};
  });
}

SweepRecord stage1_point(const PumpSetup& pump, double tau,
                         const SweepOptions& options) {
  const ThreeModeState out = evolve(pump.input, tau);
  notify(options, pump.input, out, tau);
  SweepRecord rec;
  rec.tau = tau;
  rec.reference = predicted_twin_beam_param(pump.alpha, tau);
  rec.overlap = stage1_overlap(out, rec.reference);
  rec.eta = conversion_rate_down(out, pump.energy);
  rec.purity = purity(reduce_mode_c(out));
  rec.n_a = mean_photon(out, Mode::a);
  rec.n_b = mean_photon(out, Mode::b);
  rec.n_c = mean_photon(out, Mode::c);
  return rec;
}

struct TwinSetup {
  ThreeModeState input;
  double energy;
};

TwinSetup make_twin_setup(complex chi, double eps) {
  if (std::norm(chi) == 0.0) {
    throw InvalidParameter("twin-beam parameter must be non-zero");
  }
  ThreeModeState input = make_twin_beam(chi, eps);
  const double energy =
      mean_photon(input, Mode::a) + mean_photon(input, Mode::b);
  return {std::move(input), energy};
}

SweepRecord stage2_record(const ThreeModeState& out, double energy, double tau,
                          const SweepOptions& options) {
  SweepRecord rec;
  rec.tau = tau;
  const MatchedPcs matched = matched_pcs_overlap(out, options.pcs_phase_grid);
  rec.overlap = matched.overlap;
  rec.reference = matched.lambda;
  rec.eta = conversion_rate_up(out, energy);
  const ReducedDensityMatrix rho = reduce_mode_c(out);
  rec.purity = purity(rho);
  rec.delta_phi = reciprocal_peak_likelihood(rho, options.phase_grid);
  rec.n_a = mean_photon(out, Mode::a);
  rec.n_b = mean_photon(out, Mode::b);
  rec.n_c = mean_photon(out, Mode::c);
  return rec;
}

SweepRecord stage2_point(const TwinSetup& twin, double tau,
                         const SweepOptions& options) {
  const ThreeModeState out = evolve(twin.input, tau);
  notify(options, twin.input, out, tau);
  return stage2_record(out, twin.energy, tau, options);
}

void validate_search(const TauSearch& search) {
  if (!(search.tau_max > 0.0) || search.coarse_points < 3 ||
      !(search.tolerance > 0.0)) {
    throw ConfigError(
        "tau search needs tau_max > 0, at least 3 coarse points and a "
        "positive tolerance");
  }
}

// Best interior local maximum of f on the coarse grid, refined by golden
// section between the neighbouring grid points.
ScalarMaximum interior_maximum(const ScalarFunction& f, const TauSearch& search,
                               int workers) {
  validate_search(search);
  const int count = search.coarse_points;
  const double h = search.tau_max / count;
  const auto values = detail::parallel_map<double>(
      count, workers, [&](std::size_t j) { return f(h * (j + 1)); });

  const int best = static_cast<int>(interior_peak_index(values));

  const double centre = h * (best + 1);
  const double lo = std::max(centre - h, 0.5 * h);
  const double hi = std::min(centre + h, search.tau_max);
  const ScalarMaximum refined =
      golden_section_maximize(f, lo, hi, search.tolerance);
  if (refined.value >= values[best]) return refined;
  return {centre, values[best]};
}

}  // namespace

std::size_t interior_peak_index(std::span<const double> values) {
  if (values.empty()) throw InvalidInput("interior_peak_index: no values");
  std::size_t best = values.size();
  for (std::size_t j = 1; j + 1 < values.size(); ++j) {
    const bool local = values[j] > values[j - 1] && values[j] >= values[j + 1];
    if (local && (best == values.size() || values[j] > values[best])) best = j;
  }
  if (best == values.size()) {
    best = static_cast<std::size_t>(
        std::max_element(values.begin(), values.end()) - values.begin());
  }
  return best;
}

double PowerLawFit::operator()(double x) const {
  return prefactor * std::pow(x, exponent);
}

int default_workers() {
  const int configured = g_default_workers.load();
  if (configured > 0) return configured;
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

void set_default_workers(int workers) { g_default_workers = std::max(workers, 0); }

std::vector<SweepRecord> stage1_sweep(complex pump_alpha,
                                      std::span<const double> tau_grid,
                                      double eps, const SweepOptions& options) {
  const PumpSetup pump = make_pump_setup(pump_alpha, eps);
  return detail::parallel_map<SweepRecord>(
      tau_grid.size(), resolve_workers(options), [&](std::size_t i) {
        return stage1_point(pump, tau_grid[i], options);
      });
}

std::vector<SweepRecord> stage2_sweep(complex chi,
                                      std::span<const double> tau_grid,
                                      double eps, const SweepOptions& options) {
  validate_truncation(eps);
  if (!(std::norm(chi) < 1.0)) {
    throw InvalidParameter("twin-beam parameter needs |chi| < 1");
  }
  if (std::norm(chi) == 0.0) {
    // Vacuum input: nothing to convert.
    std::vector<SweepRecord> out;
    for (double tau : tau_grid) {
      SweepRecord rec;
      rec.tau = tau;
      rec.overlap = 1.0;
      rec.purity = 1.0;
      rec.delta_phi = 2.0 * std::numbers::pi;
      out.push_back(rec);
    }
    return out;
  }
  const TwinSetup twin = make_twin_setup(chi, eps);
  return detail::parallel_map<SweepRecord>(
      tau_grid.size(), resolve_workers(options), [&](std::size_t i) {
        return stage2_point(twin, tau_grid[i], options);
      });
}

OptimalTau find_optimal_tau(complex chi, double eps, const TauSearch& search,
                            const SweepOptions& options) {
  const TwinSetup twin = make_twin_setup(chi, eps);
  const auto overlap_at = [&](double tau) {
    const ThreeModeState out = evolve(twin.input, tau);
    notify(options, twin.input, out, tau);
    return matched_pcs_overlap(out, options.pcs_phase_grid).overlap;
  };
  const ScalarMaximum best =
      interior_maximum(overlap_at, search, resolve_workers(options));
  OptimalTau result;
  result.record = stage2_point(twin, best.x, options);
  result.tau = best.x;
  result.overlap = result.record.overlap;
  result.eta = result.record.eta;
  return result;
}

OptimalTau find_max_conversion_tau(complex pump_alpha, double eps,
                                   const TauSearch& search,
                                   const SweepOptions& options) {
  const PumpSetup pump = make_pump_setup(pump_alpha, eps);
  const auto eta_at = [&](double tau) {
    const ThreeModeState out = evolve(pump.input, tau);
    notify(options, pump.input, out, tau);
    return conversion_rate_down(out, pump.energy);
  };
  const ScalarMaximum best =
      interior_maximum(eta_at, search, resolve_workers(options));
  OptimalTau result;
  result.record = stage1_point(pump, best.x, options);
  result.tau = best.x;
  result.overlap = result.record.overlap;
  result.eta = result.record.eta;
  return result;
}

PowerLawFit fit_power_law(std::span<const double> xs,
                          std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw InvalidInput("fit_power_law: xs and ys differ in length");
  }
  if (xs.size() < 3) {
    throw InvalidInput("fit_power_law: need at least 3 points");
  }
  const std::size_t n = xs.size();
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0) || !std::isfinite(xs[i]) ||
        !std::isfinite(ys[i])) {
      throw InvalidInput("fit_power_law: values must be finite and positive");
    }
    lx[i] = std::log(xs[i]);
    ly[i] = std::log(ys[i]);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (!(sxx > 0.0)) {
    throw InvalidInput("fit_power_law: xs must not all be equal");
  }
  PowerLawFit fit;
  fit.exponent = sxy / sxx;
  const double intercept = my - fit.exponent * mx;
  fit.prefactor = std::exp(intercept);
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ly[i] - (intercept + fit.exponent * lx[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

ReducedDensityMatrix full_pipeline(complex pump_alpha, double tau1,
                                   double tau2, double eps,
                                   const SweepOptions& options) {
  if (!(tau1 >= 0.0) || !(tau2 >= 0.0)) {
    throw InvalidParameter("pipeline interaction times must be >= 0");
  }
  const ThreeModeState pumped =
      evolve(make_coherent_pump(pump_alpha, eps), tau1);

  // Conditional (a, b) amplitudes for each pump-mode occupation.
  std::map<int, std::vector<std::pair<FockTriple, complex>>> branches;
  pumped.for_each([&](FockTriple t, complex amp) {
    branches[t.n_c].emplace_back(FockTriple{t.n_a, t.n_b, 0}, amp);
  });
  std::vector<std::pair<double, std::vector<std::pair<FockTriple, complex>>>>
      weighted;
  for (auto& [m, amps] : branches) {
    double w = 0.0;
    for (const auto& [t, amp] : amps) w += std::norm(amp);
    if (w > 0.0) weighted.emplace_back(w, std::move(amps));
  }

  const auto partial = detail::parallel_map<Eigen::MatrixXcd>(
      weighted.size(), resolve_workers(options), [&](std::size_t i) {
        const auto& [w, amps] = weighted[i];
        const ThreeModeState in = ThreeModeState::from_fock(amps);
        const ThreeModeState out = evolve(in, tau2);
        notify(options, in, out, tau2);
        return Eigen::MatrixXcd(w * reduce_mode_c(out).matrix());
      });

  Eigen::Index dim = 1;
  for (const auto& m : partial) dim = std::max(dim, m.rows());
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& m : partial) rho.topLeftCorner(m.rows(), m.cols()) += m;
  return ReducedDensityMatrix(std::move(rho));
}

ScalingStudy scaling_study(std::span<const double> n_in_values, double eps,
                           const TauSearch& search,
                           const SweepOptions& options) {
  if (n_in_values.size() < 3) {
    throw InvalidParameter("scaling study needs at least 3 energies to fit");
  }
  for (double n : n_in_values) {
    if (!(n > 0.0) || !std::isfinite(n)) {
      throw InvalidParameter(
          "scaling study energies must be positive (a power law is undefined "
          "at N_in = 0)");
    }
  }
  // Parallelize across energies; each search runs on one thread.
  SweepOptions inner = options;
  inner.workers = 1;
  ScalingStudy study;
  study.points = detail::parallel_map<ScalingPoint>(
      n_in_values.size(), resolve_workers(options), [&](std::size_t i) {
        const complex chi = twin_beam_modulus_for_energy(n_in_values[i]);
        const OptimalTau opt = find_optimal_tau(chi, eps, search, inner);
        ScalingPoint p;
        p.n_in = n_in_values[i];
        p.n_out = opt.record.n_c;
        p.tau_opt = opt.tau;
        p.overlap = opt.overlap;
        p.eta = opt.eta;
        p.purity = opt.record.purity.value_or(0.0);
        p.delta_phi = opt.record.delta_phi.value_or(0.0);
        p.lambda = opt.record.reference;
        return p;
      });

  std::vector<double> n_in, n_out, tau, dphi;
  for (const auto& p : study.points) {
    n_in.push_back(p.n_in);
    n_out.push_back(p.n_out);
    tau.push_back(p.tau_opt);
    dphi.push_back(p.delta_phi);
  }
  study.tau_vs_n_in = fit_power_law(n_in, tau);
  study.tau_vs_n_out = fit_power_law(n_out, tau);
  study.delta_phi_vs_n_out = fit_power_law(n_out, dphi);
  return study;
}

}  // namespace triwave
