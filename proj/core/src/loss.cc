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

#include "polar3d/loss.h"

#include <algorithm>
#include <cmath>

#include "polar3d/error.h"

namespace polar3d {
namespace {

double Sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

void CheckKink(double residual, const char* what) {
  if (std::abs(residual) < kKinkTolerance) {
    throw KinkError(std::string("L1 kink in ") + what + " residual");
  }
}

}  // namespace

double FocalLoss(double prob, bool is_positive, double gamma, double alpha) {
  const double p = std::clamp(prob, kProbabilityClamp, 1.0 - kProbabilityClamp);
  if (is_positive) {
    return -alpha * std::pow(1.0 - p, gamma) * std::log(p);
  }
  return -(1.0 - alpha) * std::pow(p, gamma) * std::log1p(-p);
}

double PolarBoxL1(const PolarBox& pred, const PolarBox& gt, double k_scaling) {
  const double plain = std::abs(pred.r - gt.r) + std::abs(pred.z - gt.z) +
                       std::abs(pred.l - gt.l) + std::abs(pred.w - gt.w) +
                       std::abs(pred.h - gt.h) +
                       std::abs(pred.sin_t - gt.sin_t) +
                       std::abs(pred.cos_t - gt.cos_t);
  const double azimuth =
      std::abs(pred.sin_a - gt.sin_a) + std::abs(pred.cos_a - gt.cos_a);
  return plain + k_scaling * azimuth;
}

double VelocityL1(const PolarVelocity& pred, const PolarVelocity& gt) {
  return std::abs(pred.v_rad - gt.v_rad) + std::abs(pred.v_tan - gt.v_tan);
}

LossBreakdown TotalMatchingLoss(std::span<const PredictionHead> preds,
                                std::span<const Target> targets,
                                const Assignment& assignment,
                                const LossConfig& config) {
  const int num_preds = static_cast<int>(preds.size());
  const int num_targets = static_cast<int>(targets.size());
  ValidateAssignment(assignment, num_targets, num_preds);
  config.range.Validate();

  std::vector<int> target_of_pred(num_preds, -1);
  for (const auto& m : assignment) target_of_pred[m.pred] = m.gt;

  LossBreakdown out;
  out.per_gt.assign(num_targets, 0.0);
  const auto& w = config.weights;
  for (int i = 0; i < num_preds; ++i) {
    const auto& pred = preds[i];
    const int t = target_of_pred[i];
    if (t >= 0 &&
        (targets[t].class_id < 0 ||
         targets[t].class_id >= static_cast<int>(pred.class_probs.size()))) {
      throw InvalidArgument("target class outside the prediction's classes");
    }
    double cls = 0.0;
    double positive = 0.0;
    for (int c = 0; c < static_cast<int>(pred.class_probs.size()); ++c) {
      const bool is_pos = (t >= 0 && c == targets[t].class_id);
      const double f =
          FocalLoss(pred.class_probs[c], is_pos, config.gamma, config.alpha);
      cls += f;
      if (is_pos) positive = f;
    }
    out.class_term += w.class_weight * cls;
    if (t < 0) continue;

    const PolarBox box = DecodeBoxEncoding(pred.encoding, config.range);
    const double box_l1 =
        w.box_weight * PolarBoxL1(box, targets[t].box, config.range.k_scaling);
    const double vel_l1 =
        w.velocity_weight * VelocityL1(pred.velocity, targets[t].velocity);
    out.box_term += box_l1;
    out.velocity_term += vel_l1;
    out.per_gt[t] = w.class_weight * positive + box_l1 + vel_l1;
  }
  out.total = out.class_term + out.box_term + out.velocity_term;
  return out;
}

ParameterVector PackParameters(const BoxEncoding& e, const PolarVelocity& v) {
  return {e.r,   e.sin_a, e.cos_a, e.z,   e.l,     e.w,
          e.h,   e.sin_t, e.cos_t, v.v_rad, v.v_tan};
}

void UnpackParameters(const ParameterVector& p, BoxEncoding* e,
                      PolarVelocity* v) {
  *e = {p[kGradR], p[kGradSinA], p[kGradCosA], p[kGradZ],   p[kGradL],
        p[kGradW], p[kGradH],    p[kGradSinT], p[kGradCosT]};
  *v = {p[kGradVRad], p[kGradVTan]};
}

double PairRegressionLoss(const BoxEncoding& enc, const PolarVelocity& velocity,
                          const Target& target, const LossConfig& config) {
  const PolarBox box = DecodeBoxEncoding(enc, config.range);
  return config.weights.box_weight *
             PolarBoxL1(box, target.box, config.range.k_scaling) +
         config.weights.velocity_weight *
             VelocityL1(velocity, target.velocity);
}

Eigen::Matrix2d NormalizedPairJacobian(double a, double b) {
  const double n2 = a * a + b * b;
  if (n2 == 0.0) throw InvalidArgument("zero-norm angle pair");
  const double n3 = n2 * std::sqrt(n2);
  Eigen::Matrix2d j;
  j << b * b / n3, -a * b / n3,  //
      -a * b / n3, a * a / n3;
  return j;
}

Gradient LossGradient(const BoxEncoding& enc, const PolarVelocity& velocity,
                      const Target& target, const LossConfig& config) {
  const PolarBox box = DecodeBoxEncoding(enc, config.range);
  const PolarBox& gt = target.box;
  const double k = config.range.k_scaling;
  const double wb = config.weights.box_weight;
  const double wv = config.weights.velocity_weight;

  const double dr = box.r - gt.r;
  const double dz = box.z - gt.z;
  const double dl = box.l - gt.l;
  const double dw = box.w - gt.w;
  const double dh = box.h - gt.h;
  const double dsa = box.sin_a - gt.sin_a;
  const double dca = box.cos_a - gt.cos_a;
  const double dst = box.sin_t - gt.sin_t;
  const double dct = box.cos_t - gt.cos_t;
  const double dvr = velocity.v_rad - target.velocity.v_rad;
  const double dvt = velocity.v_tan - target.velocity.v_tan;
  CheckKink(dr, "r");
  CheckKink(dz, "z");
  CheckKink(dl, "l");
  CheckKink(dw, "w");
  CheckKink(dh, "h");
  CheckKink(dsa, "sin azimuth");
  CheckKink(dca, "cos azimuth");
  CheckKink(dst, "sin yaw");
  CheckKink(dct, "cos yaw");
  CheckKink(dvr, "radial velocity");
  CheckKink(dvt, "tangential velocity");

  Gradient g{};
  const double sr = Sigmoid(enc.r);
  g[kGradR] = wb * Sign(dr) * sr * (1.0 - sr) * config.range.r_max;
  const double sz = Sigmoid(enc.z);
  g[kGradZ] = wb * Sign(dz) * sz * (1.0 - sz) *
              (config.range.z_max - config.range.z_min);
  g[kGradL] = wb * Sign(dl) * box.l;
  g[kGradW] = wb * Sign(dw) * box.w;
  g[kGradH] = wb * Sign(dh) * box.h;

  const Eigen::Vector2d upstream_a(wb * k * Sign(dsa), wb * k * Sign(dca));
  const Eigen::Vector2d ga =
      NormalizedPairJacobian(enc.sin_a, enc.cos_a).transpose() * upstream_a;
  g[kGradSinA] = ga.x();
  g[kGradCosA] = ga.y();

  const Eigen::Vector2d upstream_t(wb * Sign(dst), wb * Sign(dct));
  const Eigen::Vector2d gt_pair =
      NormalizedPairJacobian(enc.sin_t, enc.cos_t).transpose() * upstream_t;
  g[kGradSinT] = gt_pair.x();
  g[kGradCosT] = gt_pair.y();

  g[kGradVRad] = wv * Sign(dvr);
  g[kGradVTan] = wv * Sign(dvt);
  return g;
}

namespace {

// PairRegressionLoss re-evaluated in extended precision so the central
// difference quotient is not swamped by rounding in the loss sum.
long double ExtendedPairLoss(const ParameterVector& p_in,
                             std::size_t bumped, long double delta,
                             const Target& t, const LossConfig& c) {
  using LD = long double;
  std::array<LD, kGradientSize> p;
  for (int i = 0; i < kGradientSize; ++i) p[i] = p_in[i];
  p[bumped] += delta;

  const RangeConfig& range = c.range;
  auto sigmoid = [](LD x) { return 1.0L / (1.0L + std::exp(-x)); };
  const LD r = sigmoid(p[kGradR]) * range.r_max;
  const LD z = sigmoid(p[kGradZ]) * (LD(range.z_max) - range.z_min) +
               range.z_min;
  const LD na = std::sqrt(p[kGradSinA] * p[kGradSinA] +
                          p[kGradCosA] * p[kGradCosA]);
  const LD nt = std::sqrt(p[kGradSinT] * p[kGradSinT] +
                          p[kGradCosT] * p[kGradCosT]);
  const auto& g = t.box;
  const LD box = std::fabs(r - g.r) + std::fabs(z - g.z) +
                 std::fabs(std::exp(p[kGradL]) - g.l) +
                 std::fabs(std::exp(p[kGradW]) - g.w) +
                 std::fabs(std::exp(p[kGradH]) - g.h) +
                 std::fabs(p[kGradSinT] / nt - g.sin_t) +
                 std::fabs(p[kGradCosT] / nt - g.cos_t) +
                 LD(range.k_scaling) *
                     (std::fabs(p[kGradSinA] / na - g.sin_a) +
                      std::fabs(p[kGradCosA] / na - g.cos_a));
  const LD vel = std::fabs(p[kGradVRad] - t.velocity.v_rad) +
                 std::fabs(p[kGradVTan] - t.velocity.v_tan);
  return LD(c.weights.box_weight) * box + LD(c.weights.velocity_weight) * vel;
}

}  // namespace

Gradient FiniteDifferenceGradient(const BoxEncoding& enc,
                                  const PolarVelocity& velocity,
                                  const Target& target,
                                  const LossConfig& config, double step) {
  if (!(step > 0.0)) throw InvalidArgument("step must be positive");
  // Validates the inputs the same way the loss itself does.
  DecodeBoxEncoding(enc, config.range);
  const ParameterVector base = PackParameters(enc, velocity);
  Gradient g{};
  for (int i = 0; i < kGradientSize; ++i) {
    const long double plus =
        ExtendedPairLoss(base, i, static_cast<long double>(step), target,
                         config);
    const long double minus =
        ExtendedPairLoss(base, i, -static_cast<long double>(step), target,
                         config);
    g[i] = static_cast<double>((plus - minus) / (2.0L * step));
  }
  return g;
}

double MaxRelativeError(const Gradient& analytic, const Gradient& numeric) {
  double worst = 0.0;
  for (int i = 0; i < kGradientSize; ++i) {
    const double scale = std::max(std::abs(analytic[i]), std::abs(numeric[i]));
    if (scale == 0.0) continue;
    worst = std::max(worst, std::abs(analytic[i] - numeric[i]) / scale);
  }
  return worst;
}

}  // namespace polar3d
