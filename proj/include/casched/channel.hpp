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
#include <string_view>

namespace casched {

/// One component carrier.
struct Carrier {
  int id = 0;
  double freq_hz = 0.0;
  double total_power_w = 0.0;
  int n_rbs = 1;
  double rb_bandwidth_hz = 1.0;
  double snr_gap = 1.0;

  friend bool operator==(const Carrier&, const Carrier&) = default;
};

/// Throws InvalidParameter when a field is out of range.
void validate(const Carrier& carrier);

enum class GainMode { Equal, FromPathloss };

/// Large-scale channel: free-space loss at `ref_distance_m`, log-distance
/// decay with `pathloss_exponent` beyond it.
struct ChannelModel {
  double ref_distance_m = 1.0;
  double pathloss_exponent = 3.76;
  double noise_power_w = 1.0;  // per RB
  GainMode gain_mode = GainMode::Equal;
  double equal_gain = 1.0;  // |G|^2 in Equal mode

  friend bool operator==(const ChannelModel&, const ChannelModel&) = default;
};

void validate(const ChannelModel& model);

/// Base of the logarithm in the per-RB rate formula.
enum class LogBase { Two, E };

std::string_view to_string(LogBase base);

inline constexpr double kSpeedOfLight = 299792458.0;

/// Equal power allocation: P_k / |Z_k|.
double rb_power(const Carrier& carrier);

/// Free-space loss at the reference distance, in dB.
double reference_loss_db(double freq_hz, const ChannelModel& model);

/// PL(d) = PL0(f) + 10 n log10(d / d0) for d >= d0. Distances inside the
/// reference distance are floored at PL0. Throws DomainError for d <= 0.
double pathloss_db(double freq_hz, double distance_m, const ChannelModel& model);

/// Distance at which pathloss_db reaches `loss_threshold_db`. Throws
/// NoCoverage when the threshold is below PL0(f).
double coverage_radius(double freq_hz, double loss_threshold_db, const ChannelModel& model);

/// gamma = P |G|^2 / N. Throws DomainError when noise <= 0 or an input is
/// negative.
double rb_snr(double rb_power_w, double gain, double noise_w);

/// H = W log(1 + beta gamma). Throws DomainError for snr < 0.
double rb_rate(const Carrier& carrier, double snr, LogBase base = LogBase::Two);

/// |G|^2 for a user at `distance_m` on `carrier` under the model's gain mode.
double channel_gain(const Carrier& carrier, double distance_m, const ChannelModel& model);

}  // namespace casched
