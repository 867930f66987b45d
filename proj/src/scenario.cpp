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

#include "casched/scenario.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include <json.hpp>

#include "casched/error.hpp"

namespace casched {
namespace {

using nlohmann::json;

// Reads typed fields out of one JSON object and remembers its path for
// error messages.
class Reader {
 public:
  Reader(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ValidationError(path_ + ": expected an object", path_);
  }

  std::string field(std::string_view key) const {
    return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
  }

  void allow_only(std::initializer_list<std::string_view> keys) const {
    const std::set<std::string_view> allowed(keys);
    for (const auto& [key, _] : node_.items()) {
      if (!allowed.contains(key)) {
        throw ValidationError(field(key) + ": unknown field", field(key));
      }
    }
  }

  bool has(std::string_view key) const { return node_.contains(key); }

  const json& at(std::string_view key) const {
    auto it = node_.find(key);
    if (it == node_.end()) throw ValidationError(field(key) + ": missing field", field(key));
    return *it;
  }

  double number(std::string_view key) const {
    const json& v = at(key);
    if (!v.is_number()) throw ValidationError(field(key) + ": expected a number", field(key));
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ValidationError(field(key) + ": must be finite", field(key));
    return d;
  }

  double number(std::string_view key, double fallback) const {
    return has(key) ? number(key) : fallback;
  }

  double positive(std::string_view key) const {
    const double d = number(key);
    if (!(d > 0.0)) throw ValidationError(field(key) + ": must be > 0", field(key));
    return d;
  }

  std::int64_t integer(std::string_view key) const {
    const json& v = at(key);
    if (v.is_number_integer()) return v.get<std::int64_t>();
    if (v.is_number_float()) {
      const double d = v.get<double>();
      if (std::isfinite(d) && d == std::floor(d) && std::abs(d) < 9e15) {
        return static_cast<std::int64_t>(d);
      }
    }
    throw ValidationError(field(key) + ": expected an integer", field(key));
  }

  std::int64_t integer(std::string_view key, std::int64_t fallback) const {
    return has(key) ? integer(key) : fallback;
  }

  std::string text(std::string_view key) const {
    const json& v = at(key);
    if (!v.is_string()) throw ValidationError(field(key) + ": expected a string", field(key));
    return v.get<std::string>();
  }

  std::string text(std::string_view key, std::string fallback) const {
    return has(key) ? text(key) : fallback;
  }

  const json& array(std::string_view key) const {
    const json& v = at(key);
    if (!v.is_array()) throw ValidationError(field(key) + ": expected an array", field(key));
    return v;
  }

 private:
  const json& node_;
  std::string path_;
};

// Runs a library validator and re-labels its error with the field path.
template <typename F>
void checked(const std::string& path, F&& f) {
  try {
    f();
  } catch (const ValidationError&) {
    throw;
  } catch (const InvalidParameter& e) {
    throw ValidationError(path + ": " + e.what(), path);
  }
}

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte; ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

ChannelModel read_channel(const Reader& r) {
  r.allow_only({"ref_distance_m", "pathloss_exponent", "noise_power_w", "gain_mode",
                "equal_gain"});
  ChannelModel m;
  m.ref_distance_m = r.number("ref_distance_m", m.ref_distance_m);
  m.pathloss_exponent = r.number("pathloss_exponent", m.pathloss_exponent);
  m.noise_power_w = r.number("noise_power_w");
  const auto mode = r.text("gain_mode", "equal");
  if (mode == "equal") {
    m.gain_mode = GainMode::Equal;
  } else if (mode == "pathloss") {
    m.gain_mode = GainMode::FromPathloss;
  } else {
    throw ValidationError(r.field("gain_mode") + ": expected \"equal\" or \"pathloss\"",
                          r.field("gain_mode"));
  }
  m.equal_gain = r.number("equal_gain", m.equal_gain);
  checked("channel", [&] { validate(m); });
  return m;
}

Carrier read_carrier(const Reader& r, const std::string& path) {
  r.allow_only({"id", "freq_hz", "power_w", "n_rbs", "rb_bandwidth_hz", "snr_gap"});
  Carrier c;
  c.id = static_cast<int>(r.integer("id"));
  c.freq_hz = r.number("freq_hz");
  c.total_power_w = r.number("power_w");
  const auto n_rbs = r.integer("n_rbs");
  if (n_rbs < 1 || n_rbs > 1'000'000) {
    throw ValidationError(r.field("n_rbs") + ": must be in [1, 1e6]", r.field("n_rbs"));
  }
  c.n_rbs = static_cast<int>(n_rbs);
  c.rb_bandwidth_hz = r.number("rb_bandwidth_hz", c.rb_bandwidth_hz);
  c.snr_gap = r.number("snr_gap", c.snr_gap);
  checked(path, [&] { validate(c); });
  return c;
}

Utility read_utility(const Reader& r) {
  const auto kind = r.text("kind");
  if (kind == "sigmoidal") {
    r.allow_only({"kind", "a", "b"});
    const double a = r.positive("a");
    const double b = r.positive("b");
    return make_sigmoidal(a, b);
  }
  if (kind == "logarithmic") {
    r.allow_only({"kind", "k", "r_max"});
    const double k = r.positive("k");
    const double r_max = r.positive("r_max");
    return make_logarithmic(k, r_max);
  }
  throw ValidationError(r.field("kind") + ": expected \"sigmoidal\" or \"logarithmic\"",
                        r.field("kind"));
}

UserEquipment read_user(const Reader& r, const std::string& path) {
  r.allow_only({"id", "distance_m", "pf_weight", "utility"});
  UserEquipment ue;
  ue.id = static_cast<int>(r.integer("id"));
  ue.distance_m = r.number("distance_m");
  ue.pf_weight = r.number("pf_weight", 1.0);
  checked(r.field("utility"),
          [&] { ue.utility = read_utility(Reader(r.at("utility"), r.field("utility"))); });
  checked(path, [&] { validate(ue); });
  return ue;
}

std::optional<Policy> read_policy(const Reader& r) {
  const auto name = r.text("policy", "upf");
  if (name == "compare") return std::nullopt;
  try {
    return parse_policy(name);
  } catch (const InvalidParameter& e) {
    throw ValidationError(r.field("policy") + ": " + e.what(), r.field("policy"));
  }
}

json utility_json(const Utility& u) {
  if (u.kind() == UtilityKind::Sigmoidal) {
    return {{"kind", "sigmoidal"}, {"a", u.a()}, {"b", u.b()}};
  }
  return {{"kind", "logarithmic"}, {"k", u.k()}, {"r_max", u.r_max()}};
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end(), nullptr, true, true);
  } catch (const json::parse_error& e) {
    const auto line = line_of(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError("scenario parse error at line " + std::to_string(line) + ": " + e.what(),
                     line);
  }

  const Reader r(root, "");
  r.allow_only({"n_frames", "loss_threshold_db", "policy", "seed", "output_dir", "log_base",
                "kkt_tol", "oracle_tol", "channel", "carriers", "users"});

  Scenario s;
  s.n_frames = r.integer("n_frames", s.n_frames);
  if (s.n_frames < 1) throw ValidationError("n_frames: must be >= 1", "n_frames");
  s.loss_threshold_db = r.number("loss_threshold_db");
  s.policy = read_policy(r);
  if (r.has("seed")) {
    const json& seed = r.at("seed");
    if (!seed.is_number_unsigned()) {
      throw ValidationError("seed: expected a non-negative integer", "seed");
    }
    s.seed = seed.get<std::uint64_t>();
  }
  s.output_dir = r.text("output_dir", s.output_dir);
  const auto base = r.text("log_base", "2");
  if (base == "2") {
    s.log_base = LogBase::Two;
  } else if (base == "e") {
    s.log_base = LogBase::E;
  } else {
    throw ValidationError("log_base: expected \"2\" or \"e\"", "log_base");
  }
  s.kkt_tol = r.number("kkt_tol", s.kkt_tol);
  if (s.kkt_tol < 0.0) throw ValidationError("kkt_tol: must be >= 0", "kkt_tol");
  s.oracle_tol = r.number("oracle_tol", s.oracle_tol);
  if (!(s.oracle_tol > 0.0)) throw ValidationError("oracle_tol: must be > 0", "oracle_tol");

  s.channel = read_channel(Reader(r.at("channel"), "channel"));

  std::set<int> ids;
  const auto& carriers = r.array("carriers");
  if (carriers.empty()) throw ValidationError("carriers: at least one carrier", "carriers");
  for (std::size_t k = 0; k < carriers.size(); ++k) {
    const std::string path = "carriers[" + std::to_string(k) + "]";
    s.carriers.push_back(read_carrier(Reader(carriers[k], path), path));
    if (!ids.insert(s.carriers.back().id).second) {
      throw ValidationError(path + ".id: duplicate carrier id", path + ".id");
    }
  }

  ids.clear();
  const auto& users = r.array("users");
  if (users.empty()) throw ValidationError("users: at least one user", "users");
  for (std::size_t k = 0; k < users.size(); ++k) {
    const std::string path = "users[" + std::to_string(k) + "]";
    s.users.push_back(read_user(Reader(users[k], path), path));
    if (!ids.insert(s.users.back().id).second) {
      throw ValidationError(path + ".id: duplicate user id", path + ".id");
    }
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open scenario file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string dump_scenario(const Scenario& s) {
  json root;
  root["n_frames"] = s.n_frames;
  root["loss_threshold_db"] = s.loss_threshold_db;
  root["policy"] = s.policy ? std::string(to_string(*s.policy)) : std::string("compare");
  root["seed"] = s.seed;
  root["output_dir"] = s.output_dir;
  root["log_base"] = std::string(to_string(s.log_base));
  root["kkt_tol"] = s.kkt_tol;
  root["oracle_tol"] = s.oracle_tol;
  root["channel"] = {
      {"ref_distance_m", s.channel.ref_distance_m},
      {"pathloss_exponent", s.channel.pathloss_exponent},
      {"noise_power_w", s.channel.noise_power_w},
      {"gain_mode", s.channel.gain_mode == GainMode::Equal ? "equal" : "pathloss"},
      {"equal_gain", s.channel.equal_gain},
  };
  root["carriers"] = json::array();
  for (const auto& c : s.carriers) {
    root["carriers"].push_back({{"id", c.id},
                                {"freq_hz", c.freq_hz},
                                {"power_w", c.total_power_w},
                                {"n_rbs", c.n_rbs},
                                {"rb_bandwidth_hz", c.rb_bandwidth_hz},
                                {"snr_gap", c.snr_gap}});
  }
  root["users"] = json::array();
  for (const auto& u : s.users) {
    root["users"].push_back({{"id", u.id},
                             {"distance_m", u.distance_m},
                             {"pf_weight", u.pf_weight},
                             {"utility", utility_json(u.utility)}});
  }
  return root.dump(2) + "\n";
}

void save_scenario(const Scenario& scenario, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write scenario file " + path.string());
  out << dump_scenario(scenario);
  if (!out) throw IoError("write failed for " + path.string());
}

SimulationConfig to_config(const Scenario& s, Policy policy) {
  SimulationConfig c;
  c.carriers = s.carriers;
  c.users = s.users;
  c.channel = s.channel;
  c.loss_threshold_db = s.loss_threshold_db;
  c.n_frames = s.n_frames;
  c.policy = policy;
  c.log_base = s.log_base;
  c.kkt_tol = s.kkt_tol;
  c.oracle_tol = s.oracle_tol;
  return c;
}

}  // namespace casched
