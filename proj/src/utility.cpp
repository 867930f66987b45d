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

#include "casched/utility.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "casched/error.hpp"

namespace casched {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// log(1 + e^t) without overflow.
double softplus(double t) {
  return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
}

// 1 / (1 + e^{-t}) without overflow.
double logistic(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

void check_rate(double r) {
  if (!(r >= 0.0)) {
    throw DomainError("utility evaluated at negative rate " + std::to_string(r));
  }
}

}  // namespace

Utility make_sigmoidal(double a, double b) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw InvalidParameter("sigmoidal utility needs a > 0, got " + std::to_string(a));
  }
  if (!(b > 0.0) || !std::isfinite(b)) {
    throw InvalidParameter("sigmoidal utility needs b > 0, got " + std::to_string(b));
  }
  Utility u;
  u.kind_ = UtilityKind::Sigmoidal;
  u.a_ = a;
  u.b_ = b;
  u.c_norm_ = 1.0 + std::exp(-a * b);
  u.d_norm_ = logistic(-a * b);
  return u;
}

Utility make_logarithmic(double k, double r_max) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw InvalidParameter("logarithmic utility needs k > 0, got " + std::to_string(k));
  }
  if (!(r_max > 0.0) || !std::isfinite(r_max)) {
    throw InvalidParameter("logarithmic utility needs r_max > 0, got " +
                           std::to_string(r_max));
  }
  Utility u;
  u.kind_ = UtilityKind::Logarithmic;
  u.k_ = k;
  u.r_max_ = r_max;
  u.log_norm_ = std::log1p(k * r_max);
  return u;
}

double Utility::log_value(double r) const {
  check_rate(r);
  if (r == 0.0) return -kInf;
  if (kind_ == UtilityKind::Sigmoidal) {
    // ln U = ln(1 - e^{-ar}) - ln(1 + e^{a(b-r)})
    return std::log(-std::expm1(-a_ * r)) - softplus(a_ * (b_ - r));
  }
  if (r >= r_max_) return 0.0;
  return std::log(std::log1p(k_ * r)) - std::log(log_norm_);
}

double Utility::value(double r) const {
  check_rate(r);
  if (r == 0.0) return 0.0;
  if (kind_ == UtilityKind::Logarithmic) {
    return r >= r_max_ ? 1.0 : std::log1p(k_ * r) / log_norm_;
  }
  return std::exp(log_value(r));
}

double Utility::log_slope(double r) const {
  check_rate(r);
  if (r == 0.0) return kInf;
  if (kind_ == UtilityKind::Sigmoidal) {
    return a_ / std::expm1(a_ * r) + a_ * logistic(a_ * (b_ - r));
  }
  const double kr = k_ * r;
  return k_ / ((1.0 + kr) * std::log1p(kr));
}

double Utility::slope(double r) const {
  check_rate(r);
  if (kind_ == UtilityKind::Logarithmic) {
    return k_ / ((1.0 + k_ * r) * log_norm_);
  }
  if (r == 0.0) return a_ * d_norm_;
  // U' = U (ln U)', combined in log space.
  return std::exp(log_value(r) + std::log(log_slope(r)));
}

}  // namespace casched
