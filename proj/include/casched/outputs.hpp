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

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "casched/scheduler.hpp"

namespace casched {

/// 12 significant digits, "inf" / "-inf" / "nan" for non-finite values.
std::string format_number(double value);

/// Writes the artifacts of one run into `dir` (created if missing):
///   trajectory_<carrier>.csv  frame,n,L_phi
///   phi_<carrier>.csv         user_id,rb_0,...,rb_{R-1}
///   rates.csv                 user_id,carrier_id,stage_rate,aggregate_rate
///                             (one row per stage membership, then one
///                             carrier_id=all row per user)
///   summary.json              objectives, KKT residuals, warnings
/// Returns the written paths. Throws IoError with the offending path.
std::vector<std::filesystem::path> write_outputs(const SimResult& result,
                                                 const std::filesystem::path& dir);

/// Side-by-side per-stage and total objectives of several runs, as CSV:
///   policy,L_<carrier>...,total_objective
std::string comparison_csv(std::span<const SimResult> results);

/// Human-readable version of comparison_csv.
std::string comparison_table(std::span<const SimResult> results);

}  // namespace casched
