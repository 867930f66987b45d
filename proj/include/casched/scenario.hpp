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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "casched/channel.hpp"
#include "casched/grouping.hpp"
#include "casched/scheduler.hpp"

namespace casched {

/// A complete simulation input as read from a scenario file.
///
/// Scenario files are JSON with `//` and `/* */` comments allowed. Every
/// physical quantity carries its unit in the key name:
///
///   {
///     "n_frames": 10000,             // optional, default 10000
///     "loss_threshold_db": 90.0,
///     "policy": "upf",               // upf | pf | pf-weighted | compare
///     "seed": 0,                     // optional, reserved
///     "output_dir": "out",           // optional
///     "log_base": "2",               // optional, "2" or "e"
///     "kkt_tol": 0,                  // optional early stop, 0 = off
///     "oracle_tol": 1e-8,            // optional
///     "channel": {
///       "ref_distance_m": 1.0, "pathloss_exponent": 3.76,
///       "noise_power_w": 0.01, "gain_mode": "equal", "equal_gain": 1.0
///     },
///     "carriers": [
///       {"id": 1, "freq_hz": 2.6e9, "power_w": 10, "n_rbs": 10,
///        "rb_bandwidth_hz": 1.0, "snr_gap": 1.0}
///     ],
///     "users": [
///       {"id": 1, "distance_m": 40, "pf_weight": 2,
///        "utility": {"kind": "sigmoidal", "a": 5, "b": 10}},
///       {"id": 2, "distance_m": 90,
///        "utility": {"kind": "logarithmic", "k": 15, "r_max": 100}}
///     ]
///   }
///
/// Unknown keys are rejected so that typos surface as errors.
struct Scenario {
  std::vector<Carrier> carriers;
  std::vector<UserEquipment> users;
  ChannelModel channel;
  double loss_threshold_db = 0.0;
  std::int64_t n_frames = 10000;
  std::optional<Policy> policy = Policy::Upf;  // empty: compare all policies
  std::uint64_t seed = 0;
  std::string output_dir = "out";
  LogBase log_base = LogBase::Two;
  double kkt_tol = 0.0;
  double oracle_tol = 1e-8;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Parses scenario text. Throws ParseError (with line) for malformed JSON,
/// ValidationError (with field path) for missing or out-of-range fields.
Scenario parse_scenario(std::string_view text);

/// Reads and parses a scenario file. Throws IoError when it cannot be read.
Scenario load_scenario(const std::filesystem::path& path);

/// Serializes a scenario so that parse_scenario reproduces it exactly.
std::string dump_scenario(const Scenario& scenario);

void save_scenario(const Scenario& scenario, const std::filesystem::path& path);

/// Simulation inputs for one policy run of `scenario`.
SimulationConfig to_config(const Scenario& scenario, Policy policy);

}  // namespace casched
