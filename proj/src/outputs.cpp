/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The casched Authors. All rights reserved.
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "casched/outputs.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "casched/error.hpp"

namespace casched {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

void write_file(const fs::path& path, const std::string& content,
                std::vector<fs::path>& written) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << content;
  out.close();
  if (!out) throw IoError("write failed for " + path.string());
  written.push_back(path);
}

// JSON number rounded to 12 significant digits; null when not finite.
json rounded(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::stod(format_number(v));
}

std::string trajectory_csv(const StageResult& stage) {
  std::ostringstream out;
  out << "frame,n,L_phi\n";
  for (std::size_t f = 0; f < stage.trajectory.size(); ++f) {
    // After frame f + 1 the shares are phi[f + 2].
    out << f + 1 << ',' << f + 2 << ',' << format_number(stage.trajectory[f]) << '\n';
  }
  return out.str();
}

std::string phi_csv(const StageResult& stage) {
  std::ostringstream out;
  out << "user_id";
  for (std::size_t j = 0; j < stage.phi.cols(); ++j) out << ",rb_" << j;
  out << '\n';
  for (std::size_t i = 0; i < stage.phi.rows(); ++i) {
    out << stage.user_ids[i];
    for (double v : stage.phi.row(i)) out << ',' << format_number(v);
    out << '\n';
  }
  return out.str();
}

std::string rates_csv(const SimResult& result) {
  std::ostringstream out;
  out << "user_id,carrier_id,stage_rate,aggregate_rate\n";
  for (const auto& stage : result.stages) {
    for (std::size_t i = 0; i < stage.user_ids.size(); ++i) {
      const int id = stage.user_ids[i];
      out << id << ',' << stage.carrier_id << ',' << format_number(stage.stage_rate[i]) << ','
          << format_number(result.aggregate_rate.at(id)) << '\n';
    }
  }
  for (const auto& [id, rate] : result.aggregate_rate) {
    out << id << ",all," << format_number(rate) << ',' << format_number(rate) << '\n';
  }
  return out.str();
}

std::string summary_json(const SimResult& result) {
  json root;
  root["policy"] = std::string(to_string(result.policy));
  root["total_objective"] = rounded(result.total_objective);
  root["stages"] = json::array();
  for (const auto& s : result.stages) {
    json stage{{"carrier_id", s.carrier_id},
               {"users", s.user_ids},
               {"frames_run", s.frames_run},
               {"objective", rounded(s.objective)},
               {"kkt_residual", rounded(s.kkt_residual)}};
    stage["oracle_objective"] = s.oracle_objective ? rounded(*s.oracle_objective) : json();
    stage["oracle_residual"] = s.oracle_residual ? rounded(*s.oracle_residual) : json();
    root["stages"].push_back(std::move(stage));
  }
  json rates = json::object();
  for (const auto& [id, rate] : result.aggregate_rate) rates[std::to_string(id)] = rounded(rate);
  root["aggregate_rate"] = std::move(rates);
  root["warnings"] = result.warnings;
  return root.dump(2) + "\n";
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::vector<fs::path> write_outputs(const SimResult& result, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());

  std::vector<fs::path> written;
  for (const auto& stage : result.stages) {
    const auto id = std::to_string(stage.carrier_id);
    write_file(dir / ("trajectory_" + id + ".csv"), trajectory_csv(stage), written);
    write_file(dir / ("phi_" + id + ".csv"), phi_csv(stage), written);
  }
  write_file(dir / "rates.csv", rates_csv(result), written);
  write_file(dir / "summary.json", summary_json(result), written);
  return written;
}

std::string comparison_csv(std::span<const SimResult> results) {
  std::ostringstream out;
  out << "policy";
  if (!results.empty()) {
    for (const auto& s : results.front().stages) out << ",L_" << s.carrier_id;
  }
  out << ",total_objective\n";
  for (const auto& r : results) {
    out << to_string(r.policy);
    for (const auto& s : r.stages) out << ',' << format_number(s.objective);
    out << ',' << format_number(r.total_objective) << '\n';
  }
  return out.str();
}

std::string comparison_table(std::span<const SimResult> results) {
  std::ostringstream out;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%-14s", "policy");
  out << buf;
  if (!results.empty()) {
    for (const auto& s : results.front().stages) {
      std::snprintf(buf, sizeof buf, "%18s", ("L(carrier " + std::to_string(s.carrier_id) + ")").c_str());
      out << buf;
    }
  }
  std::snprintf(buf, sizeof buf, "%18s\n", "sum ln U(r_i)");
  out << buf;
  for (const auto& r : results) {
    std::snprintf(buf, sizeof buf, "%-14s", std::string(to_string(r.policy)).c_str());
    out << buf;
    for (const auto& s : r.stages) {
      std::snprintf(buf, sizeof buf, "%18s", format_number(s.objective).c_str());
      out << buf;
    }
    std::snprintf(buf, sizeof buf, "%18s\n", format_number(r.total_objective).c_str());
    out << buf;
  }
  return out.str();
}

}  // namespace casched
