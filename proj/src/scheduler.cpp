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

#include "casched/scheduler.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <utility>

#include "casched/error.hpp"
#include "casched/kernels.hpp"
#include "casched/oracle.hpp"

namespace casched {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Below this many matrix entries a frame is cheaper without a thread team.
constexpr std::size_t kParallelThreshold = 1u << 14;

bool use_parallel(Execution exec, const Matrix& m) {
  if (exec == Execution::Auto) return m.rows() * m.cols() >= kParallelThreshold;
  return exec == Execution::Parallel;
}

std::vector<kernels::UserPriority> priorities(const ScheduleState& s, Policy policy) {
  const std::size_t n = s.user_ids.size();
  std::vector<kernels::UserPriority> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (policy == Policy::Upf) {
      const Utility& u = s.problem.utilities[i];
      const double x = s.problem.carried[i] + s.stage_rate[i];
      out[i] = {u.log_slope(x), u.slope(x)};
    } else {
      const double w = policy == Policy::TraditionalPfWeighted ? s.pf_weights[i] : 1.0;
      const double avg = s.stage_rate[i];
      out[i] = {avg == 0.0 ? kInf : w / avg, w};
    }
  }
  return out;
}

double stage_objective(const ScheduleState& s) {
  double total = 0.0;
  for (std::size_t i = 0; i < s.user_ids.size(); ++i) {
    total += s.problem.utilities[i].log_value(s.problem.carried[i] + s.stage_rate[i]);
  }
  return total;
}

}  // namespace

std::string_view to_string(Policy policy) {
  switch (policy) {
    case Policy::Upf:
      return "upf";
    case Policy::TraditionalPf:
      return "pf";
    case Policy::TraditionalPfWeighted:
      return "pf-weighted";
  }
  return "?";
}

Policy parse_policy(std::string_view name) {
  if (name == "upf") return Policy::Upf;
  if (name == "pf") return Policy::TraditionalPf;
  if (name == "pf-weighted") return Policy::TraditionalPfWeighted;
  throw InvalidParameter("unknown policy '" + std::string(name) +
                         "' (expected upf, pf or pf-weighted)");
}

double upf_metric(const Utility& u, double carried, double stage_rate, double h) {
  if (h == 0.0) return 0.0;
  const double s = u.log_slope(carried + stage_rate);
  return std::isinf(s) ? kInf : s * h;
}

double pf_metric(double weight, double h, double avg_rate) {
  if (h == 0.0) return 0.0;
  if (avg_rate == 0.0) return kInf;
  return weight * h / avg_rate;
}

ScheduleState make_state(int carrier_id, std::vector<int> user_ids, StageProblem problem,
                         std::vector<double> pf_weights) {
  validate(problem);
  if (user_ids.size() != problem.n_users() || pf_weights.size() != problem.n_users()) {
    throw InvalidParameter("schedule state: user ids / weights do not match the problem");
  }
  ScheduleState s;
  s.carrier_id = carrier_id;
  s.user_ids = std::move(user_ids);
  s.pf_weights = std::move(pf_weights);
  s.phi = Matrix(problem.n_users(), problem.n_rbs(), 0.0);
  s.stage_rate.assign(problem.n_users(), 0.0);
  s.problem = std::move(problem);
  s.frame_index = 1;
  return s;
}

std::vector<int> assign_frame(const ScheduleState& state, Policy policy, Execution exec) {
  const auto prio = priorities(state, policy);
  std::vector<int> winners(state.problem.n_rbs(), 0);
  if (use_parallel(exec, state.problem.rate_table)) {
    kernels::argmax_parallel(prio, state.problem.rate_table, winners);
  } else {
    kernels::argmax_serial(prio, state.problem.rate_table, winners);
  }
  return winners;
}

ScheduleState update_shares(ScheduleState state, std::span<const int> assignment,
                            Execution exec) {
  if (assignment.size() != state.phi.cols()) {
    throw ContractViolation("assignment covers " + std::to_string(assignment.size()) +
                            " RBs, stage has " + std::to_string(state.phi.cols()));
  }
  const auto rows = static_cast<int>(state.phi.rows());
  for (std::size_t j = 0; j < assignment.size(); ++j) {
    if (assignment[j] < 0 || assignment[j] >= rows) {
      throw ContractViolation("RB " + std::to_string(j) + " assigned to invalid user row " +
                              std::to_string(assignment[j]));
    }
  }
  if (use_parallel(exec, state.phi)) {
    kernels::update_shares_parallel(state.phi, assignment, state.frame_index);
  } else {
    kernels::update_shares_serial(state.phi, assignment, state.frame_index);
  }
  state.stage_rate = stage_rates(state.phi, state.problem.rate_table);
  ++state.frame_index;
  return state;
}

StageResult run_carrier_stage(ScheduleState state, Policy policy, const StageOptions& options) {
  if (options.n_frames < 1) throw InvalidParameter("n_frames must be >= 1");
  StageResult out;
  out.carrier_id = state.carrier_id;
  out.user_ids = state.user_ids;
  out.carried = state.problem.carried;
  out.trajectory.reserve(static_cast<std::size_t>(options.n_frames));

  for (std::int64_t f = 0; f < options.n_frames; ++f) {
    const auto winners = assign_frame(state, policy, options.exec);
    state = update_shares(std::move(state), winners, options.exec);
    out.trajectory.push_back(stage_objective(state));
    ++out.frames_run;
    if (options.on_frame) options.on_frame(state);
    if (options.kkt_tol > 0.0 &&
        oracle::kkt_residual(state.phi, state.problem) < options.kkt_tol) {
      break;
    }
  }

  out.stage_rate = state.stage_rate;
  out.kkt_residual = oracle::kkt_residual(state.phi, state.problem);
  out.objective = out.trajectory.back();
  out.phi = std::move(state.phi);
  return out;
}

Matrix build_rate_table(const Carrier& carrier, std::span<const UserEquipment> group,
                        const ChannelModel& model, LogBase base) {
  Matrix h(group.size(), static_cast<std::size_t>(carrier.n_rbs));
  const double power = rb_power(carrier);
  for (std::size_t i = 0; i < group.size(); ++i) {
    const double gain = channel_gain(carrier, group[i].distance_m, model);
    // Flat channel: every RB of the carrier sees the same rate.
    const double rate = rb_rate(carrier, rb_snr(power, gain, model.noise_power_w), base);
    for (double& v : h.row(i)) v = rate;
  }
  return h;
}

StageResult run_carrier_stage(const Carrier& carrier, std::span<const UserEquipment> group,
                              std::span<const double> carried, const ChannelModel& model,
                              LogBase base, Policy policy, const StageOptions& options) {
  if (group.empty()) {
    StageResult empty;
    empty.carrier_id = carrier.id;
    return empty;
  }
  if (carried.size() != group.size()) {
    throw InvalidParameter("carried rates do not match the group size");
  }
  StageProblem problem;
  problem.rate_table = build_rate_table(carrier, group, model, base);
  problem.carried.assign(carried.begin(), carried.end());
  std::vector<int> ids;
  std::vector<double> weights;
  for (const auto& ue : group) {
    problem.utilities.push_back(ue.utility);
    ids.push_back(ue.id);
    weights.push_back(ue.pf_weight);
  }
  return run_carrier_stage(make_state(carrier.id, std::move(ids), std::move(problem),
                                      std::move(weights)),
                           policy, options);
}

void validate(const SimulationConfig& config) {
  if (config.carriers.empty()) throw InvalidParameter("configuration has no carriers");
  if (config.users.empty()) throw InvalidParameter("configuration has no users");
  if (config.n_frames < 1) throw InvalidParameter("n_frames must be >= 1");
  if (!(config.kkt_tol >= 0.0)) throw InvalidParameter("kkt_tol must be >= 0");
  if (!(config.oracle_tol > 0.0)) throw InvalidParameter("oracle_tol must be > 0");
  validate(config.channel);
  std::set<int> ids;
  for (const auto& c : config.carriers) {
    validate(c);
    if (!ids.insert(c.id).second) {
      throw InvalidParameter("duplicate carrier id " + std::to_string(c.id));
    }
  }
  ids.clear();
  for (const auto& u : config.users) {
    validate(u);
    if (!ids.insert(u.id).second) {
      throw InvalidParameter("duplicate user id " + std::to_string(u.id));
    }
  }
}

SimResult run_simulation(const SimulationConfig& config) {
  validate(config);
  SimResult out;
  out.policy = config.policy;
  out.groups = build_groups(config.users, config.carriers, config.channel,
                            config.loss_threshold_db);
  for (const auto& w : out.groups.warnings) out.warnings.push_back(w.message);

  std::map<int, const UserEquipment*> by_id;
  for (const auto& u : config.users) by_id[u.id] = &u;
  std::map<int, const Carrier*> carrier_by_id;
  for (const auto& c : config.carriers) carrier_by_id[c.id] = &c;

  std::map<int, double> accumulated;
  for (const auto& [id, _] : out.groups.alpha) accumulated[id] = 0.0;

  StageOptions options;
  options.n_frames = config.n_frames;
  options.kkt_tol = config.kkt_tol;
  options.exec = config.exec;

  for (int carrier_id : out.groups.stage_order) {
    const Carrier& carrier = *carrier_by_id.at(carrier_id);
    const auto& members = out.groups.groups.at(carrier_id);
    std::vector<UserEquipment> group;
    std::vector<double> carried;
    for (int id : members) {
      group.push_back(*by_id.at(id));
      carried.push_back(accumulated.at(id));
    }

    StageResult stage = run_carrier_stage(carrier, group, carried, config.channel,
                                          config.log_base, config.policy, options);

    if (config.solve_oracle && !group.empty()) {
      StageProblem problem;
      problem.rate_table = build_rate_table(carrier, group, config.channel, config.log_base);
      problem.carried = carried;
      for (const auto& ue : group) problem.utilities.push_back(ue.utility);
      try {
        const auto sol = oracle::solve_stage_optimum(problem, config.oracle_tol);
        stage.oracle_objective = sol.objective;
        stage.oracle_residual = sol.residual;
        for (const auto& w : sol.warnings) {
          out.warnings.push_back("carrier " + std::to_string(carrier_id) + ": " + w);
        }
      } catch (const ConvergenceFailure& e) {
        stage.oracle_objective = e.best_objective;
        stage.oracle_residual = e.best_residual;
        out.warnings.push_back("carrier " + std::to_string(carrier_id) + ": " + e.what());
      }
    }

    for (std::size_t i = 0; i < members.size(); ++i) {
      accumulated[members[i]] += stage.stage_rate[i];
    }
    out.stages.push_back(std::move(stage));
  }

  out.aggregate_rate = accumulated;
  for (const auto& [id, rate] : accumulated) {
    out.total_objective += by_id.at(id)->utility.log_value(rate);
  }
  return out;
}

}  // namespace casched
