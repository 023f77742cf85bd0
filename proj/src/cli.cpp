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

#include "triwave/cli.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "triwave/error.hpp"
#include "triwave/experiments.hpp"
#include "triwave/fock_blocks.hpp"
#include "triwave/io.hpp"

namespace triwave {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Config problem attributable to one flag.
class FlagError : public ConfigError {
 public:
  FlagError(const std::string& flag, const std::string& what)
      : ConfigError(flag + ": " + what) {}
};

struct OutputOptions {
  std::string path;
  std::string format;
};

struct TauGridOptions {
  double tau_min = 0.0;
  double tau_max = 3.0;
  int tau_steps = 301;
};

struct Settings {
  double eps = kDefaultTruncation;
  int phase_grid = kDefaultPhaseGrid;
  OutputOptions output;
  TauGridOptions grid;
  // stage1 / pipeline
  double pump_energy = 0.0;
  double pump_phase = 0.0;
  double tau1 = 0.0;
  double tau2 = 0.0;
  // stage2
  std::optional<double> n_in;
  std::optional<double> chi2;
  double chi_phase = 0.0;
  // scaling
  std::string n_in_list;
  double tau_window = 3.0;
  int coarse_points = 64;
  double tolerance = 1e-5;
  // block-info
  int s = 0;
  int k = 0;
  std::string coupling = "trilinear";
};

const CLI::Validator kTruncation(
    [](std::string& value) -> std::string {
      double eps = 0.0;
      try {
        eps = std::stod(value);
      } catch (...) {
        return "cannot parse '" + value + "'";
      }
      if (!(eps > 0.0 && eps <= 1e-4)) return "must lie in (0, 1e-4]";
      return {};
    },
    "(0, 1e-4]");

void add_output(CLI::App* sub, Settings& s) {
  sub->add_option("--out", s.output.path, "Output file")->required();
  sub->add_option("--format", s.output.format, "csv or json (default: from extension)")
      ->check(CLI::IsMember({"csv", "json"}));
}

void add_numerics(CLI::App* sub, Settings& s) {
  sub->add_option("--eps", s.eps, "Truncation tail probability")
      ->check(kTruncation);
  sub->add_option("--phase-grid", s.phase_grid, "Phase-distribution grid size")
      ->check(CLI::Range(256, INT_MAX));
}

void add_tau_grid(CLI::App* sub, Settings& s) {
  sub->add_option("--tau-min", s.grid.tau_min, "First scaled time");
  sub->add_option("--tau-max", s.grid.tau_max, "Last scaled time");
  sub->add_option("--tau-steps", s.grid.tau_steps, "Number of grid points")
      ->check(CLI::Range(2, INT_MAX));
}

std::vector<double> make_tau_grid(const TauGridOptions& g) {
  if (!std::isfinite(g.tau_min) || !(g.tau_min >= 0.0)) {
    throw FlagError("--tau-min", "must be finite and >= 0");
  }
  if (!std::isfinite(g.tau_max) || !(g.tau_max > g.tau_min)) {
    throw FlagError("--tau-max", "must be finite and exceed --tau-min");
  }
  std::vector<double> taus(g.tau_steps);
  const double h = (g.tau_max - g.tau_min) / (g.tau_steps - 1);
  for (int i = 0; i < g.tau_steps; ++i) taus[i] = g.tau_min + h * i;
  taus.back() = g.tau_max;
  return taus;
}

io::Format resolve_output(const OutputOptions& o) {
  const fs::path path(o.path);
  const fs::path dir = path.parent_path();
  if (!dir.empty() && !fs::is_directory(dir)) {
    throw FlagError("--out", "directory '" + dir.string() + "' does not exist");
  }
  if (!o.format.empty()) return o.format == "json" ? io::Format::json : io::Format::csv;
  return path.extension() == ".json" ? io::Format::json : io::Format::csv;
}

complex pump_alpha(const Settings& s) {
  if (!(s.pump_energy > 0.0) || !std::isfinite(s.pump_energy)) {
    throw FlagError("--pump-energy", "must be finite and positive");
  }
  return std::polar(std::sqrt(s.pump_energy), s.pump_phase);
}

std::string fmt(double x) { return io::format_double(x); }

json config_json(const std::string& command, const Settings& s) {
  json c = {{"command", command}, {"eps", s.eps}, {"phase_grid", s.phase_grid}};
  return c;
}

json tau_grid_json(const TauGridOptions& g) {
  return {{"tau_min", g.tau_min}, {"tau_max", g.tau_max}, {"tau_steps", g.tau_steps}};
}

void write_sweep(const Settings& s, io::Format format, json config,
                 const std::vector<SweepRecord>& records, bool stage1,
                 json extra = json::object()) {
  std::string text;
  if (format == io::Format::csv) {
    std::ostringstream os;
    io::write_sweep_csv(os, records, stage1);
    text = os.str();
  } else {
    json doc = {{"config", std::move(config)}, {"fits", json::object()}};
    doc["records"] = json::array();
    for (const auto& r : records) doc["records"].push_back(io::to_json(r, stage1));
    for (auto& [key, value] : extra.items()) doc[key] = value;
    text = io::render_json(doc);
  }
  io::write_file(s.output.path, text);
}

int run_stage1(const Settings& s, std::ostream& out) {
  const io::Format format = resolve_output(s.output);
  const complex alpha = pump_alpha(s);
  const auto taus = make_tau_grid(s.grid);
  SweepOptions opts;
  opts.phase_grid = s.phase_grid;
  const auto records = stage1_sweep(alpha, taus, s.eps, opts);

  json config = config_json("stage1", s);
  config["pump_energy"] = s.pump_energy;
  config["pump_phase"] = s.pump_phase;
  config["tau_grid"] = tau_grid_json(s.grid);
  write_sweep(s, format, config, records, true);

  std::vector<double> eta;
  for (const auto& r : records) eta.push_back(r.eta);
  const auto& best = records[interior_peak_index(eta)];
  out << "stage1: tau_opt=" << fmt(best.tau) << " overlap=" << fmt(best.overlap)
      << " eta=" << fmt(best.eta) << "\n";
  return kExitOk;
}

complex twin_beam_chi(const Settings& s) {
  double r2 = 0.0;
  if (s.n_in && s.chi2) {
    throw FlagError("--n-in", "give either --n-in or --chi2, not both");
  }
  if (s.n_in) {
    if (!(*s.n_in >= 0.0) || !std::isfinite(*s.n_in)) {
      throw FlagError("--n-in", "must be finite and >= 0");
    }
    r2 = *s.n_in / (*s.n_in + 2.0);
  } else if (s.chi2) {
    if (!(*s.chi2 >= 0.0 && *s.chi2 < 1.0)) {
      throw FlagError("--chi2", "|chi|^2 must lie in [0, 1)");
    }
    r2 = *s.chi2;
  } else {
    throw FlagError("--n-in", "one of --n-in or --chi2 is required");
  }
  return std::polar(std::sqrt(r2), s.chi_phase);
}

int run_stage2(const Settings& s, std::ostream& out) {
  const io::Format format = resolve_output(s.output);
  const complex chi = twin_beam_chi(s);
  const auto taus = make_tau_grid(s.grid);
  SweepOptions opts;
  opts.phase_grid = s.phase_grid;
  const auto records = stage2_sweep(chi, taus, s.eps, opts);

  json config = config_json("stage2", s);
  config["chi_re"] = chi.real();
  config["chi_im"] = chi.imag();
  config["n_in"] = std::norm(chi) < 1.0 ? twin_beam_energy(chi) : 0.0;
  config["tau_grid"] = tau_grid_json(s.grid);
  write_sweep(s, format, config, records, false);

  std::vector<double> overlap;
  for (const auto& r : records) overlap.push_back(r.overlap);
  const auto& best = records[interior_peak_index(overlap)];
  out << "stage2: tau_opt=" << fmt(best.tau) << " overlap=" << fmt(best.overlap)
      << " eta=" << fmt(best.eta) << "\n";
  return kExitOk;
}

int run_pipeline(const Settings& s, std::ostream& out) {
  const io::Format format = resolve_output(s.output);
  const complex alpha = pump_alpha(s);
  if (!(s.tau1 >= 0.0) || !std::isfinite(s.tau1)) {
    throw FlagError("--tau1", "must be finite and >= 0");
  }
  if (!(s.tau2 >= 0.0) || !std::isfinite(s.tau2)) {
    throw FlagError("--tau2", "must be finite and >= 0");
  }
  SweepOptions opts;
  opts.phase_grid = s.phase_grid;
  const ReducedDensityMatrix rho = full_pipeline(alpha, s.tau1, s.tau2, s.eps, opts);

  // Energy delivered to the second crystal by the first one.
  const ThreeModeState twin = evolve(make_coherent_pump(alpha, s.eps), s.tau1);
  const double na_in = mean_photon(twin, Mode::a);
  const double nb_in = mean_photon(twin, Mode::b);

  SweepRecord rec;
  rec.tau = s.tau2;
  const MatchedPcs matched = matched_pcs_overlap(rho);
  rec.overlap = matched.overlap;
  rec.reference = matched.lambda;
  for (Eigen::Index n = 1; n < rho.matrix().rows(); ++n) {
    rec.n_c += n * rho.matrix()(n, n).real();
  }
  // n_a + n_c and n_b + n_c are conserved in the second crystal.
  rec.n_a = na_in - rec.n_c;
  rec.n_b = nb_in - rec.n_c;
  rec.eta = na_in + nb_in > 0.0 ? 2.0 * rec.n_c / (na_in + nb_in) : 0.0;
  rec.purity = purity(rho);
  rec.delta_phi = reciprocal_peak_likelihood(rho, s.phase_grid);

  json config = config_json("pipeline", s);
  config["pump_energy"] = s.pump_energy;
  config["pump_phase"] = s.pump_phase;
  config["tau1"] = s.tau1;
  config["tau2"] = s.tau2;
  write_sweep(s, format, config, {rec}, false,
              {{"density_matrix", io::to_json(rho)}});

  out << "pipeline: tau2=" << fmt(rec.tau) << " overlap=" << fmt(rec.overlap)
      << " eta=" << fmt(rec.eta) << "\n";
  return kExitOk;
}

int run_scaling(const Settings& s, std::ostream& out) {
  const io::Format format = resolve_output(s.output);
  std::vector<double> energies;
  try {
    energies = io::parse_range(s.n_in_list);
  } catch (const ConfigError& e) {
    throw FlagError("--n-in-list", e.what());
  }
  if (energies.size() < 3) {
    throw FlagError("--n-in-list", "needs at least 3 energies for the fits");
  }
  for (double n : energies) {
    if (!(n > 0.0)) throw FlagError("--n-in-list", "energies must be positive");
  }
  TauSearch search;
  search.tau_max = s.tau_window;
  search.coarse_points = s.coarse_points;
  search.tolerance = s.tolerance;
  if (!(search.tau_max > 0.0)) throw FlagError("--tau-window", "must be positive");
  if (!(search.tolerance > 0.0)) throw FlagError("--tolerance", "must be positive");
  SweepOptions opts;
  opts.phase_grid = s.phase_grid;
  const ScalingStudy study = scaling_study(energies, s.eps, search, opts);

  std::string text;
  if (format == io::Format::csv) {
    std::ostringstream os;
    io::write_scaling_csv(os, study);
    text = os.str();
  } else {
    json config = config_json("scaling", s);
    config["n_in_list"] = s.n_in_list;
    config["tau_window"] = s.tau_window;
    config["coarse_points"] = s.coarse_points;
    config["tolerance"] = s.tolerance;
    json doc = {{"config", config}};
    doc["records"] = json::array();
    for (const auto& p : study.points) doc["records"].push_back(io::to_json(p));
    doc["fits"] = {{"tau_vs_n_in", io::to_json(study.tau_vs_n_in)},
                   {"tau_vs_n_out", io::to_json(study.tau_vs_n_out)},
                   {"delta_phi_vs_n_out", io::to_json(study.delta_phi_vs_n_out)}};
    text = io::render_json(doc);
  }
  io::write_file(s.output.path, text);

  std::vector<double> overlap;
  for (const auto& p : study.points) overlap.push_back(p.overlap);
  const auto& best = study.points[std::max_element(overlap.begin(), overlap.end()) -
                                  overlap.begin()];
  out << "scaling: tau_opt=" << fmt(study.tau_vs_n_in.prefactor) << "*N_in^"
      << fmt(study.tau_vs_n_in.exponent) << " max overlap=" << fmt(best.overlap)
      << " (N_in=" << fmt(best.n_in) << ", tau_opt=" << fmt(best.tau_opt)
      << ", eta=" << fmt(best.eta) << ")\n";
  return kExitOk;
}

int run_block_info(const Settings& s, std::ostream& out) {
  const BlockIndex b{s.s, s.k};
  try {
    validate_block(b);
  } catch (const InvalidBlockIndex& e) {
    throw FlagError("--k", e.what());
  }
  const BlockHamiltonian h(b, s.coupling == "pnd" ? Coupling::number_recombination
                                                  : Coupling::trilinear);
  auto list = [](auto begin, auto end) {
    std::string text = "[";
    for (auto it = begin; it != end; ++it) {
      text += (it == begin ? "" : ", ") + fmt(*it);
    }
    return text + "]";
  };
  out << "block s=" << b.s << " k=" << b.k << " coupling=" << s.coupling
      << " dimension " << h.dimension() << "\n";
  out << "offdiag " << list(h.offdiag().begin(), h.offdiag().end()) << "\n";
  const auto& ev = h.eigenvalues();
  out << "eigenvalues " << list(ev.data(), ev.data() + ev.size()) << "\n";
  return kExitOk;
}

void apply_thread_env() {
  const char* env = std::getenv("TRIWAVE_THREADS");
  if (env == nullptr || *env == '\0') return;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1 || n > 4096) {
    throw FlagError("TRIWAVE_THREADS", "must be a positive integer");
  }
  set_default_workers(static_cast<int>(n));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Exact simulator of three-wave mixing in invariant blocks",
               "triwave"};
  app.require_subcommand(1);
  Settings s;

  auto* stage1 = app.add_subcommand("stage1", "Down-conversion of vacuum by a coherent pump");
  stage1->add_option("--pump-energy", s.pump_energy, "Mean pump photon number |alpha|^2")
      ->required();
  stage1->add_option("--pump-phase", s.pump_phase, "arg(alpha) in radians");
  add_tau_grid(stage1, s);
  add_numerics(stage1, s);
  add_output(stage1, s);

  auto* stage2 = app.add_subcommand("stage2", "Up-conversion of a twin beam");
  stage2->add_option("--n-in", s.n_in, "Twin-beam energy <n_a + n_b>");
  stage2->add_option("--chi2", s.chi2, "Twin-beam |chi|^2");
  stage2->add_option("--chi-phase", s.chi_phase, "arg(chi) in radians");
  add_tau_grid(stage2, s);
  add_numerics(stage2, s);
  add_output(stage2, s);

  auto* pipeline = app.add_subcommand("pipeline", "Both crystals chained");
  pipeline->add_option("--pump-energy", s.pump_energy, "Mean pump photon number")
      ->required();
  pipeline->add_option("--pump-phase", s.pump_phase, "arg(alpha) in radians");
  pipeline->add_option("--tau1", s.tau1, "Scaled time in the first crystal")->required();
  pipeline->add_option("--tau2", s.tau2, "Scaled time in the second crystal")->required();
  add_numerics(pipeline, s);
  add_output(pipeline, s);

  auto* scaling = app.add_subcommand("scaling", "Optimal-time scaling study");
  scaling->add_option("--n-in-list", s.n_in_list, "start:stop:step or comma list")
      ->required();
  scaling->add_option("--tau-window", s.tau_window, "Upper end of the tau search");
  scaling->add_option("--coarse-points", s.coarse_points, "Coarse search grid size")
      ->check(CLI::Range(3, INT_MAX));
  scaling->add_option("--tolerance", s.tolerance, "Golden-section tolerance");
  add_numerics(scaling, s);
  add_output(scaling, s);

  auto* block = app.add_subcommand("block-info", "Show one block Hamiltonian");
  block->add_option("--s", s.s, "n_a + n_b + 2 n_c")->required();
  block->add_option("--k", s.k, "n_a + n_c")->required();
  block->add_option("--coupling", s.coupling, "trilinear or pnd")
      ->check(CLI::IsMember({"trilinear", "pnd"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::Success&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }

  try {
    apply_thread_env();
    if (stage1->parsed()) return run_stage1(s, out);
    if (stage2->parsed()) return run_stage2(s, out);
    if (pipeline->parsed()) return run_pipeline(s, out);
    if (scaling->parsed()) return run_scaling(s, out);
    return run_block_info(s, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const InvalidParameter& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntimeError;
  }
}

}  // namespace triwave
