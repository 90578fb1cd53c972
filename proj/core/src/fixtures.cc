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

#include "polar3d/fixtures.h"

#include <cmath>
#include <numbers>

namespace polar3d {
namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

PolarBox BoxAt(double r, double azimuth_deg) {
  PolarBox b;
  b.r = r;
  b.sin_a = std::sin(azimuth_deg * kDeg);
  b.cos_a = std::cos(azimuth_deg * kDeg);
  b.z = 1.0;
  b.l = 4.0;
  b.w = 2.0;
  b.h = 1.5;
  return b;
}

}  // namespace

RangeAmbiguityFixture MakeRangeAmbiguityFixture() {
  constexpr double kRange = 48.0;
  const double diag = kRange / std::numbers::sqrt2;
  RangeAmbiguityFixture f;
  f.objects[0] = {kRange, 0.0, 1.0, 4.0, 2.0, 1.5, 0.0};
  f.objects[1] = {diag, diag, 1.0, 4.0, 2.0, 1.5, std::numbers::pi / 4};
  f.rectangular = PerceptionRange::Rectangular(35.0, 50.0);
  f.circular = PerceptionRange::Circular(50.0);
  return f;
}

ScalingFixture MakeScalingFixture() {
  ScalingFixture f;
  f.gts = {{BoxAt(30.0, 0.0), 0}, {BoxAt(31.0, 10.0), 0}};
  f.preds = {{BoxAt(31.0, 0.5), {1.0}}, {BoxAt(30.0, 9.5), {1.0}}};
  f.azimuth_correct = {{0, 0}, {1, 1}};
  return f;
}

GradientFixture RandomGradientFixture(std::mt19937_64& rng,
                                      const LossConfig& config,
                                      double min_residual) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> angle(-std::numbers::pi,
                                               std::numbers::pi);
  const RangeConfig& range = config.range;
  for (;;) {
    GradientFixture f;
    BoxEncoding& e = f.encoding;
    e.r = 3.0 * u(rng);
    e.z = 3.0 * u(rng);
    e.l = 1.5 * u(rng);
    e.w = 1.0 * u(rng);
    e.h = 1.0 * u(rng);
    const double a = angle(rng);
    const double t = angle(rng);
    // Unnormalized pairs with magnitudes in [0.5, 2].
    const double sa = 1.25 + 0.75 * u(rng);
    const double st = 1.25 + 0.75 * u(rng);
    e.sin_a = sa * std::sin(a);
    e.cos_a = sa * std::cos(a);
    e.sin_t = st * std::sin(t);
    e.cos_t = st * std::cos(t);
    f.velocity = {5.0 * u(rng), 5.0 * u(rng)};

    PolarBox& g = f.target.box;
    g.r = range.r_max * (0.5 + 0.45 * u(rng));
    g.z = 0.5 * (range.z_min + range.z_max) +
          0.45 * (range.z_max - range.z_min) * u(rng);
    g.l = std::exp(1.5 * u(rng));
    g.w = std::exp(1.0 * u(rng));
    g.h = std::exp(1.0 * u(rng));
    const double ga = angle(rng);
    const double gt = angle(rng);
    g.sin_a = std::sin(ga);
    g.cos_a = std::cos(ga);
    g.sin_t = std::sin(gt);
    g.cos_t = std::cos(gt);
    f.target.velocity = {5.0 * u(rng), 5.0 * u(rng)};

    const PolarBox p = DecodeBoxEncoding(e, range);
    const double residuals[] = {
        p.r - g.r,         p.z - g.z,         p.l - g.l,
        p.w - g.w,         p.h - g.h,         p.sin_a - g.sin_a,
        p.cos_a - g.cos_a, p.sin_t - g.sin_t, p.cos_t - g.cos_t,
        f.velocity.v_rad - f.target.velocity.v_rad,
        f.velocity.v_tan - f.target.velocity.v_tan};
    bool clear = true;
    for (double d : residuals) clear = clear && std::abs(d) > min_residual;
    if (clear) return f;
  }
}

}  // namespace polar3d
