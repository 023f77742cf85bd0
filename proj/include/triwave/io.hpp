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

#ifndef TRIWAVE_IO_HPP
#define TRIWAVE_IO_HPP

#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "triwave/experiments.hpp"

namespace triwave::io {

enum class Format { csv, json };

/// Shortest decimal string that reads back to the same double; independent
/// of the global locale. Non-finite values print as "nan" / "inf" / "-inf".
std::string format_double(double x);

/// Parses "start:stop:step" (inclusive stop) or a comma-separated list.
/// Throws ConfigError on malformed input.
std::vector<double> parse_range(const std::string& text);

/// Column names of the sweep CSV. The reference columns are named
/// lambda_* for stage 2 and chi_* for stage 1.
std::vector<std::string> sweep_columns(bool stage1);

void write_sweep_csv(std::ostream& out, std::span<const SweepRecord> records,
                     bool stage1);
void write_scaling_csv(std::ostream& out, const ScalingStudy& study);

nlohmann::json to_json(const SweepRecord& record, bool stage1);
nlohmann::json to_json(const ScalingPoint& point);
nlohmann::json to_json(const PowerLawFit& fit);
nlohmann::json to_json(const ReducedDensityMatrix& rho);

/// {"config": ..., "records": [...], "fits": {...}} plus any extra keys.
std::string render_json(const nlohmann::json& document);

/// Writes `contents` to `path` in binary mode (LF line endings).
void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace triwave::io

#endif  // TRIWAVE_IO_HPP
