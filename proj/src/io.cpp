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

#include "triwave/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "triwave/error.hpp"

namespace triwave::io {

namespace {

double parse_number(const std::string& token, const std::string& context) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || token.empty()) {
    throw ConfigError("cannot parse number '" + token + "' in " + context);
  }
  return value;
}

std::string optional_field(const std::optional<double>& x) {
  return x ? format_double(*x) : std::string{};
}

nlohmann::json optional_json(const std::optional<double>& x) {
  return x ? nlohmann::json(*x) : nlohmann::json(nullptr);
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

std::vector<double> parse_range(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.size() != 3) {
      throw ConfigError("range '" + text + "' must be start:stop:step");
    }
    const double start = parse_number(parts[0], text);
    const double stop = parse_number(parts[1], text);
    const double step = parse_number(parts[2], text);
    if (!(step > 0.0) || stop < start) {
      throw ConfigError("range '" + text +
                        "' needs a positive step and stop >= start");
    }
    const double slack = 1e-9 * step;
    for (long i = 0;; ++i) {
      const double x = start + static_cast<double>(i) * step;
      if (x > stop + slack) break;
      out.push_back(x);
    }
    return out;
  }
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    out.push_back(parse_number(item, text));
  }
  if (out.empty()) throw ConfigError("empty value list");
  return out;
}

std::vector<std::string> sweep_columns(bool stage1) {
  return {"tau",  "overlap", "eta", "purity",
          "delta_phi", "n_a", "n_b", "n_c",
          stage1 ? "chi_re" : "lambda_re", stage1 ? "chi_im" : "lambda_im"};
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRecord> records,
                     bool stage1) {
  const auto columns = sweep_columns(stage1);
  for (std::size_t i = 0; i < columns.size(); ++i) {
    out << (i ? "," : "") << columns[i];
  }
  out << '\n';
  for (const SweepRecord& r : records) {
    out << format_double(r.tau) << ',' << format_double(r.overlap) << ','
        << format_double(r.eta) << ',' << optional_field(r.purity) << ','
        << optional_field(r.delta_phi) << ',' << format_double(r.n_a) << ','
        << format_double(r.n_b) << ',' << format_double(r.n_c) << ','
        << format_double(r.reference.real()) << ','
        << format_double(r.reference.imag()) << '\n';
  }
}

void write_scaling_csv(std::ostream& out, const ScalingStudy& study) {
  out << "n_in,n_out,tau_opt,overlap,eta,purity,delta_phi,lambda_re,lambda_im\n";
  for (const ScalingPoint& p : study.points) {
    out << format_double(p.n_in) << ',' << format_double(p.n_out) << ','
        << format_double(p.tau_opt) << ',' << format_double(p.overlap) << ','
        << format_double(p.eta) << ',' << format_double(p.purity) << ','
        << format_double(p.delta_phi) << ',' << format_double(p.lambda.real())
        << ',' << format_double(p.lambda.imag()) << '\n';
  }
}

nlohmann::json to_json(const SweepRecord& r, bool stage1) {
  const std::string ref = stage1 ? "chi" : "lambda";
  return {{"tau", r.tau},
          {"overlap", r.overlap},
          {"eta", r.eta},
          {"purity", optional_json(r.purity)},
          {"delta_phi", optional_json(r.delta_phi)},
          {"n_a", r.n_a},
          {"n_b", r.n_b},
          {"n_c", r.n_c},
          {ref + "_re", r.reference.real()},
          {ref + "_im", r.reference.imag()}};
}

nlohmann::json to_json(const ScalingPoint& p) {
  return {{"n_in", p.n_in},         {"n_out", p.n_out},
          {"tau_opt", p.tau_opt},   {"overlap", p.overlap},
          {"eta", p.eta},           {"purity", p.purity},
          {"delta_phi", p.delta_phi}, {"lambda_re", p.lambda.real()},
          {"lambda_im", p.lambda.imag()}};
}

nlohmann::json to_json(const PowerLawFit& fit) {
  return {{"prefactor", fit.prefactor},
          {"exponent", fit.exponent},
          {"residual", fit.residual}};
}

nlohmann::json to_json(const ReducedDensityMatrix& rho) {
  const auto& m = rho.matrix();
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row_re = nlohmann::json::array();
    nlohmann::json row_im = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row_re.push_back(m(i, j).real());
      row_im.push_back(m(i, j).imag());
    }
    re.push_back(std::move(row_re));
    im.push_back(std::move(row_im));
  }
  return {{"cutoff", rho.cutoff()}, {"re", re}, {"im", im}};
}

std::string render_json(const nlohmann::json& document) {
  return document.dump(2) + "\n";
}

void write_file(const std::filesystem::path& path,
                const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << contents;
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace triwave::io
