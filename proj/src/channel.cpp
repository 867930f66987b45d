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

#include "casched/channel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "casched/error.hpp"

namespace casched {

void validate(const Carrier& c) {
  const std::string where = "carrier " + std::to_string(c.id) + ": ";
  if (!(c.freq_hz > 0.0)) throw InvalidParameter(where + "freq_hz must be > 0");
  if (!(c.total_power_w > 0.0)) throw InvalidParameter(where + "power_w must be > 0");
  if (c.n_rbs < 1) throw InvalidParameter(where + "n_rbs must be >= 1");
  if (!(c.rb_bandwidth_hz > 0.0)) throw InvalidParameter(where + "rb_bandwidth_hz must be > 0");
  if (!(c.snr_gap > 0.0)) throw InvalidParameter(where + "snr_gap must be > 0");
}

void validate(const ChannelModel& m) {
  if (!(m.ref_distance_m > 0.0)) throw InvalidParameter("channel: ref_distance_m must be > 0");
  if (!(m.pathloss_exponent >= 2.0)) {
    throw InvalidParameter("channel: pathloss_exponent must be >= 2");
  }
  if (!(m.noise_power_w > 0.0)) throw InvalidParameter("channel: noise_power_w must be > 0");
  if (m.gain_mode == GainMode::Equal && !(m.equal_gain >= 0.0)) {
    throw InvalidParameter("channel: equal_gain must be >= 0");
  }
}

std::string_view to_string(LogBase base) { return base == LogBase::Two ? "2" : "e"; }

double rb_power(const Carrier& carrier) {
  return carrier.total_power_w / static_cast<double>(carrier.n_rbs);
}

double reference_loss_db(double freq_hz, const ChannelModel& model) {
  return 20.0 * std::log10(4.0 * std::numbers::pi * model.ref_distance_m * freq_hz /
                           kSpeedOfLight);
}

double pathloss_db(double freq_hz, double distance_m, const ChannelModel& model) {
  if (!(distance_m > 0.0)) {
    throw DomainError("pathloss at non-positive distance " + std::to_string(distance_m));
  }
  const double pl0 = reference_loss_db(freq_hz, model);
  if (distance_m <= model.ref_distance_m) return pl0;
  return pl0 + 10.0 * model.pathloss_exponent * std::log10(distance_m / model.ref_distance_m);
}

double coverage_radius(double freq_hz, double loss_threshold_db, const ChannelModel& model) {
  const double pl0 = reference_loss_db(freq_hz, model);
  if (loss_threshold_db < pl0) {
    throw NoCoverage("loss threshold " + std::to_string(loss_threshold_db) +
                     " dB is below the reference loss " + std::to_string(pl0) + " dB");
  }
  return model.ref_distance_m *
         std::pow(10.0, (loss_threshold_db - pl0) / (10.0 * model.pathloss_exponent));
}

double rb_snr(double rb_power_w, double gain, double noise_w) {
  if (!(noise_w > 0.0)) throw DomainError("noise power must be > 0");
  if (rb_power_w < 0.0 || gain < 0.0) throw DomainError("power and gain must be >= 0");
  return rb_power_w * gain / noise_w;
}

double rb_rate(const Carrier& carrier, double snr, LogBase base) {
  if (!(snr >= 0.0)) throw DomainError("negative snr " + std::to_string(snr));
  const double nats = std::log1p(carrier.snr_gap * snr);
  return carrier.rb_bandwidth_hz * (base == LogBase::Two ? nats / std::numbers::ln2 : nats);
}

double channel_gain(const Carrier& carrier, double distance_m, const ChannelModel& model) {
  if (model.gain_mode == GainMode::Equal) return model.equal_gain;
  return std::pow(10.0, -pathloss_db(carrier.freq_hz, distance_m, model) / 10.0);
}

}  // namespace casched
