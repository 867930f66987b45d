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

namespace casched {

enum class UtilityKind { Sigmoidal, Logarithmic };

/// Normalized application utility of a user's aggregate rate.
///
/// Sigmoidal (real-time traffic):
///   U(r) = c (1 / (1 + exp(-a (r - b))) - d),
///   c = (1 + e^{ab}) / e^{ab},  d = 1 / (1 + e^{ab}),
/// which simplifies to U(r) = (1 - e^{-ar}) / (1 + e^{a(b - r)}). All
/// evaluation goes through that form in log space, so a*b far beyond the
/// double exponent range is fine.
///
/// Logarithmic (delay-tolerant traffic):
///   U(r) = log(1 + k r) / log(1 + k r_max),
/// clamped to 1 above r_max. The slope is never clamped.
///
/// Both satisfy U(0) = 0 and are strictly increasing; ln U is concave.
class Utility {
 public:
  UtilityKind kind() const noexcept { return kind_; }

  // Sigmoidal parameters. Zero for a logarithmic utility.
  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double c_norm() const noexcept { return c_norm_; }
  double d_norm() const noexcept { return d_norm_; }

  // Logarithmic parameters. Zero for a sigmoidal utility.
  double k() const noexcept { return k_; }
  double r_max() const noexcept { return r_max_; }

  /// U(r) in [0, 1]. Throws DomainError for r < 0.
  double value(double r) const;

  /// dU/dr. Throws DomainError for r < 0.
  double slope(double r) const;

  /// ln U(r); -infinity when U(r) = 0.
  double log_value(double r) const;

  /// d/dr ln U(r) = U'(r) / U(r); +infinity at r = 0.
  double log_slope(double r) const;

  friend bool operator==(const Utility&, const Utility&) = default;

 private:
  friend Utility make_sigmoidal(double a, double b);
  friend Utility make_logarithmic(double k, double r_max);

  UtilityKind kind_ = UtilityKind::Logarithmic;
  double a_ = 0.0;
  double b_ = 0.0;
  double c_norm_ = 0.0;
  double d_norm_ = 0.0;
  double k_ = 0.0;
  double r_max_ = 0.0;
  double log_norm_ = 0.0;  // log1p(k r_max)
};

/// Throws InvalidParameter unless a > 0 and b > 0.
Utility make_sigmoidal(double a, double b);

/// Throws InvalidParameter unless k > 0 and r_max > 0.
Utility make_logarithmic(double k, double r_max);

}  // namespace casched
