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

// casched: run the carrier-aggregation RB scheduler on a scenario file.
//
//   casched run <scenario> [--frames N] [--policy upf|pf|pf-weighted] [--out DIR]
//   casched compare <scenario> [--frames N] [--out DIR]
//   global: --log-base {2,e}  --kkt-tol X

#include <cstdio>
#include <exception>
#include <filesystem>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "casched/error.hpp"
#include "casched/outputs.hpp"
#include "casched/scenario.hpp"
#include "casched/scheduler.hpp"

namespace fs = std::filesystem;
using namespace casched;

namespace {

struct Overrides {
  std::optional<std::int64_t> frames;
  std::optional<std::string> policy;
  std::optional<std::string> out;
  std::optional<std::string> log_base;
  std::optional<double> kkt_tol;
};

void apply(const Overrides& o, Scenario& s) {
  if (o.frames) {
    if (*o.frames < 1) throw InvalidParameter("--frames must be >= 1");
    s.n_frames = *o.frames;
  }
  if (o.log_base) s.log_base = *o.log_base == "e" ? LogBase::E : LogBase::Two;
  if (o.kkt_tol) {
    if (*o.kkt_tol < 0.0) throw InvalidParameter("--kkt-tol must be >= 0");
    s.kkt_tol = *o.kkt_tol;
  }
  if (o.out) s.output_dir = *o.out;
}

void print_run(const SimResult& r, const fs::path& dir) {
  std::printf("policy %s\n", std::string(to_string(r.policy)).c_str());
  for (const auto& s : r.stages) {
    std::printf("  carrier %d: %zu users, %lld frames, L=%s, L*=%s, kkt=%s\n", s.carrier_id,
                s.user_ids.size(), static_cast<long long>(s.frames_run),
                format_number(s.objective).c_str(),
                s.oracle_objective ? format_number(*s.oracle_objective).c_str() : "-",
                format_number(s.kkt_residual).c_str());
  }
  std::printf("  sum ln U(r_i) = %s\n", format_number(r.total_objective).c_str());
  for (const auto& w : r.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
  std::printf("  artifacts in %s\n", dir.string().c_str());
}

int cmd_run(const std::string& path, const Overrides& o) {
  Scenario s = load_scenario(path);
  apply(o, s);
  Policy policy = s.policy.value_or(Policy::Upf);
  if (o.policy) policy = parse_policy(*o.policy);
  const auto result = run_simulation(to_config(s, policy));
  const fs::path dir = s.output_dir;
  write_outputs(result, dir);
  print_run(result, dir);
  return 0;
}

int cmd_compare(const std::string& path, const Overrides& o) {
  Scenario s = load_scenario(path);
  apply(o, s);
  const Policy policies[] = {Policy::Upf, Policy::TraditionalPfWeighted, Policy::TraditionalPf};

  // The three runs share nothing mutable.
  std::vector<std::future<SimResult>> jobs;
  for (Policy p : policies) {
    jobs.push_back(std::async(std::launch::async, [&s, p] { return run_simulation(to_config(s, p)); }));
  }
  std::vector<SimResult> results;
  for (auto& j : jobs) results.push_back(j.get());

  const fs::path root = s.output_dir;
  for (const auto& r : results) write_outputs(r, root / std::string(to_string(r.policy)));
  {
    std::error_code ec;
    fs::create_directories(root, ec);
    std::FILE* f = std::fopen((root / "comparison.csv").string().c_str(), "wb");
    if (!f) throw IoError("cannot write " + (root / "comparison.csv").string());
    const auto csv = comparison_csv(results);
    std::fwrite(csv.data(), 1, csv.size(), f);
    std::fclose(f);
  }
  std::fputs(comparison_table(results).c_str(), stdout);
  for (const auto& r : results) {
    for (const auto& w : r.warnings) {
      std::fprintf(stderr, "warning [%s]: %s\n", std::string(to_string(r.policy)).c_str(),
                   w.c_str());
    }
  }
  std::printf("artifacts in %s\n", root.string().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Carrier-aggregation resource-block scheduler"};
  app.require_subcommand(1);

  Overrides o;
  app.add_option("--log-base", o.log_base, "Logarithm base of the rate formula")
      ->check(CLI::IsMember({"2", "e"}));
  app.add_option("--kkt-tol", o.kkt_tol, "Stop a stage early once its KKT residual is below X");

  std::string scenario;

  auto* run = app.add_subcommand("run", "Run one scheduling policy");
  run->fallthrough();
  run->add_option("scenario", scenario, "Scenario file")->required();
  run->add_option("--frames", o.frames, "Number of frames per carrier stage");
  run->add_option("--policy", o.policy, "Scheduling policy")
      ->check(CLI::IsMember({"upf", "pf", "pf-weighted"}));
  run->add_option("--out", o.out, "Output directory");

  auto* compare = app.add_subcommand("compare", "Run UPF and both traditional-PF baselines");
  compare->fallthrough();
  compare->add_option("scenario", scenario, "Scenario file")->required();
  compare->add_option("--frames", o.frames, "Number of frames per carrier stage");
  compare->add_option("--out", o.out, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(scenario, o);
    return cmd_compare(scenario, o);
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: invalid field %s: %s\n", e.field.c_str(), e.what());
    return 2;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
