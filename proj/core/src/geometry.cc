/*
 * Copyright 2026 The polar3d Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "polar3d/geometry.h"

#include <cmath>
#include <numbers>
#include <string>

#include "polar3d/error.h"

namespace polar3d {
namespace {

bool AllFinite(std::initializer_list<double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void CheckUnitPair(double s, double c, const char* what) {
  if (!std::isfinite(s) || !std::isfinite(c) ||
      std::abs(s * s + c * c - 1.0) > kUnitPairTolerance) {
    throw InvalidArgument(std::string(what) + " pair is not unit length");
  }
}

}  // namespace

void RangeConfig::Validate() const {
  if (!(r_max > 0.0) || !std::isfinite(r_max)) {
    throw InvalidArgument("RangeConfig: r_max must be positive");
  }
  if (!(z_max > z_min) || !std::isfinite(z_min) || !std::isfinite(z_max)) {
    throw InvalidArgument("RangeConfig: z_max must exceed z_min");
  }
  if (!(k_scaling >= 1.0) || !std::isfinite(k_scaling)) {
    throw InvalidArgument("RangeConfig: k_scaling must be >= 1");
  }
}

void ValidatePolarBox(const PolarBox& b) {
  if (!AllFinite({b.r, b.sin_a, b.cos_a, b.z, b.l, b.w, b.h, b.sin_t,
                  b.cos_t})) {
    throw InvalidArgument("PolarBox has non-finite fields");
  }
  if (b.r < 0.0) throw InvalidArgument("PolarBox: r must be >= 0");
  if (!(b.l > 0.0 && b.w > 0.0 && b.h > 0.0)) {
    throw InvalidArgument("PolarBox: sizes must be positive");
  }
  CheckUnitPair(b.sin_a, b.cos_a, "azimuth");
  CheckUnitPair(b.sin_t, b.cos_t, "yaw");
}

bool IsValidPolarBox(const PolarBox& box) {
  try {
    ValidatePolarBox(box);
  } catch (const InvalidArgument&) {
    return false;
  }
  return true;
}

double Sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double Logit(double p) { return std::log(p) - std::log1p(-p); }

PolarBox DecodeBoxEncoding(const BoxEncoding& e, const RangeConfig& range) {
  range.Validate();
  if (!AllFinite({e.r, e.sin_a, e.cos_a, e.z, e.l, e.w, e.h, e.sin_t,
                  e.cos_t})) {
    throw InvalidArgument("BoxEncoding has non-finite fields");
  }
  const double norm_a = std::hypot(e.sin_a, e.cos_a);
  const double norm_t = std::hypot(e.sin_t, e.cos_t);
  if (norm_a == 0.0) throw InvalidArgument("zero-norm azimuth pair");
  if (norm_t == 0.0) throw InvalidArgument("zero-norm yaw pair");

  PolarBox box;
  box.r = Sigmoid(e.r) * range.r_max;
  box.z = Sigmoid(e.z) * (range.z_max - range.z_min) + range.z_min;
  box.sin_a = e.sin_a / norm_a;
  box.cos_a = e.cos_a / norm_a;
  box.l = std::exp(e.l);
  box.w = std::exp(e.w);
  box.h = std::exp(e.h);
  box.sin_t = e.sin_t / norm_t;
  box.cos_t = e.cos_t / norm_t;
  return box;
}

namespace {

BoxEncoding EncodeImpl(const PolarBox& box, const RangeConfig& range,
                       bool lenient) {
  range.Validate();
  ValidatePolarBox(box);
  const double pr = box.r / range.r_max;
  const double pz = (box.z - range.z_min) / (range.z_max - range.z_min);

  BoxEncoding e;
  if (lenient) {
    auto clamped_logit = [](double p) {
      if (p <= 0.0) return -kLenientLogitClamp;
      if (p >= 1.0) return kLenientLogitClamp;
      const double v = Logit(p);
      return v < -kLenientLogitClamp  ? -kLenientLogitClamp
             : v > kLenientLogitClamp ? kLenientLogitClamp
                                      : v;
    };
    e.r = clamped_logit(pr);
    e.z = clamped_logit(pz);
  } else {
    if (!(pr > 0.0 && pr < 1.0)) {
      throw RangeError("r must lie strictly inside (0, R_max)");
    }
    if (!(pz > 0.0 && pz < 1.0)) {
      throw RangeError("z must lie strictly inside (Z_min, Z_max)");
    }
    e.r = Logit(pr);
    e.z = Logit(pz);
  }
  e.sin_a = box.sin_a;
  e.cos_a = box.cos_a;
  e.l = std::log(box.l);
  e.w = std::log(box.w);
  e.h = std::log(box.h);
  e.sin_t = box.sin_t;
  e.cos_t = box.cos_t;
  return e;
}

}  // namespace

BoxEncoding EncodePolarBox(const PolarBox& box, const RangeConfig& range) {
  return EncodeImpl(box, range, /*lenient=*/false);
}

BoxEncoding EncodePolarBoxLenient(const PolarBox& box,
                                  const RangeConfig& range) {
  return EncodeImpl(box, range, /*lenient=*/true);
}

PolarBox CartesianToPolar(const CartesianBox& b) {
  if (!AllFinite({b.x, b.y, b.z, b.l, b.w, b.h, b.yaw})) {
    throw InvalidArgument("CartesianBox has non-finite fields");
  }
  const double r = std::hypot(b.x, b.y);
  if (r == 0.0) {
    throw InvalidArgument("azimuth is undefined at the ego origin");
  }
  PolarBox p;
  p.r = r;
  p.sin_a = b.y / r;
  p.cos_a = b.x / r;
  p.z = b.z;
  p.l = b.l;
  p.w = b.w;
  p.h = b.h;
  p.sin_t = std::sin(b.yaw);
  p.cos_t = std::cos(b.yaw);
  return p;
}

CartesianBox PolarToCartesian(const PolarBox& p) {
  ValidatePolarBox(p);
  CartesianBox b;
  b.x = p.r * p.cos_a;
  b.y = p.r * p.sin_a;
  b.z = p.z;
  b.l = p.l;
  b.w = p.w;
  b.h = p.h;
  b.yaw = WrapAngle(std::atan2(p.sin_t, p.cos_t));
  return b;
}

PolarVelocity VelocityCartesianToPolar(const CartesianVelocity& v,
                                       double sin_a, double cos_a) {
  CheckUnitPair(sin_a, cos_a, "azimuth");
  return {v.vx * cos_a + v.vy * sin_a, -v.vx * sin_a + v.vy * cos_a};
}

CartesianVelocity VelocityPolarToCartesian(const PolarVelocity& v,
                                           double sin_a, double cos_a) {
  CheckUnitPair(sin_a, cos_a, "azimuth");
  return {v.v_rad * cos_a - v.v_tan * sin_a,
          v.v_rad * sin_a + v.v_tan * cos_a};
}

double WrapAngle(double angle) {
  constexpr double kPi = std::numbers::pi;
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  if (angle > -kPi && angle <= kPi) return angle;
  double wrapped = std::remainder(angle, kTwoPi);  // [-pi, pi]
  if (wrapped <= -kPi) wrapped += kTwoPi;
  return wrapped;
}

double AzimuthOf(const PolarBox& box) {
  return std::atan2(box.sin_a, box.cos_a);
}

double YawOf(const PolarBox& box) { return std::atan2(box.sin_t, box.cos_t); }

}  // namespace polar3d
