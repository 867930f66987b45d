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
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "casched/channel.hpp"
#include "casched/grouping.hpp"
#include "casched/matrix.hpp"
#include "casched/problem.hpp"

namespace casched {

enum class Policy {
  Upf,                    // utility proportional fairness
  TraditionalPf,          // w_i H / avg rate, all w_i = 1
  TraditionalPfWeighted,  // w_i H / avg rate, configured w_i
};

std::string_view to_string(Policy policy);
/// Accepts "upf", "pf", "pf-weighted". Throws InvalidParameter otherwise.
Policy parse_policy(std::string_view name);

enum class Execution { Auto, Serial, Parallel };

/// U'(c + r) h / U(c + r). +infinity when U(c + r) = 0 and h > 0; 0 when h = 0.
double upf_metric(const Utility& u, double carried, double stage_rate, double h);

/// weight h / avg_rate. +infinity when avg_rate = 0 and h > 0; 0 when h = 0.
double pf_metric(double weight, double h, double avg_rate);

/// Online scheduling state of one carrier stage.
struct ScheduleState {
  int carrier_id = 0;
  std::vector<int> user_ids;  // group members, row order of every matrix
  StageProblem problem;       // H, utilities, carried rates
  std::vector<double> pf_weights;
  Matrix phi;                      // share matrix phi[n]
  std::vector<double> stage_rate;  // sum_j phi_ij H_ij
  std::int64_t frame_index = 1;    // n
};

/// Fresh state with phi = 0 at frame 1.
ScheduleState make_state(int carrier_id, std::vector<int> user_ids, StageProblem problem,
                         std::vector<double> pf_weights);

/// Per-RB winner (row index) for the next frame, from the metrics at the
/// frame-start state. Ties go to the lowest row; among zero-utility users the
/// largest U'(c + r) H wins.
std::vector<int> assign_frame(const ScheduleState& state, Policy policy,
                              Execution exec = Execution::Auto);

/// Applies one frame of share updates and advances the frame index.
/// Throws ContractViolation unless `assignment` names one valid row per RB.
ScheduleState update_shares(ScheduleState state, std::span<const int> assignment,
                            Execution exec = Execution::Auto);

struct StageOptions {
  std::int64_t n_frames = 10000;
  /// Stop early once the KKT residual of phi drops below this; 0 disables.
  double kkt_tol = 0.0;
  Execution exec = Execution::Auto;
  /// Called after every frame with the updated state.
  std::function<void(const ScheduleState&)> on_frame;
};

struct StageResult {
  int carrier_id = 0;
  std::vector<int> user_ids;
  std::vector<double> carried;
  std::vector<double> stage_rate;
  /// L(phi[n + 1]) after each processed frame; -infinity entries are allowed
  /// while some user still has zero utility.
  std::vector<double> trajectory;
  Matrix phi;
  std::int64_t frames_run = 0;
  double kkt_residual = 0.0;
  double objective = 0.0;                   // last trajectory entry
  std::optional<double> oracle_objective;   // L* from the convex solver
  std::optional<double> oracle_residual;
};

/// Runs the online scheduler for one carrier from phi = 0.
StageResult run_carrier_stage(ScheduleState state, Policy policy, const StageOptions& options);

/// Builds the stage state for `group` on `carrier` and runs it.
StageResult run_carrier_stage(const Carrier& carrier, std::span<const UserEquipment> group,
                              std::span<const double> carried, const ChannelModel& model,
                              LogBase base, Policy policy, const StageOptions& options);

/// H_ij for each user of `group` on each RB of `carrier`.
Matrix build_rate_table(const Carrier& carrier, std::span<const UserEquipment> group,
                        const ChannelModel& model, LogBase base);

struct SimulationConfig {
  std::vector<Carrier> carriers;
  std::vector<UserEquipment> users;
  ChannelModel channel;
  double loss_threshold_db = 0.0;
  std::int64_t n_frames = 10000;
  Policy policy = Policy::Upf;
  LogBase log_base = LogBase::Two;
  double kkt_tol = 0.0;  // early stop, 0 disables
  /// Solve each stage with the convex oracle and record L*.
  bool solve_oracle = true;
  double oracle_tol = 1e-8;
  Execution exec = Execution::Auto;
};

/// Throws InvalidParameter / ValidationError on bad fields.
void validate(const SimulationConfig& config);

struct SimResult {
  Policy policy = Policy::Upf;
  GroupAssignment groups;
  std::vector<StageResult> stages;           // in scheduling order
  std::map<int, double> aggregate_rate;      // user id -> r_i
  double total_objective = 0.0;              // sum_i ln U_i(r_i)
  std::vector<std::string> warnings;
};

/// Groups users, then runs one stage per carrier from the smallest coverage
/// radius outwards, carrying each user's accumulated rate into later stages.
SimResult run_simulation(const SimulationConfig& config);

}  // namespace casched
