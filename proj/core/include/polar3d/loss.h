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

#ifndef POLAR3D_LOSS_H_
#define POLAR3D_LOSS_H_

#include <array>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "polar3d/assignment.h"
#include "polar3d/geometry.h"

namespace polar3d {

struct LossWeights {
  double class_weight = 1.0;
  double box_weight = 1.0;
  double velocity_weight = 1.0;
};

struct LossConfig {
  RangeConfig range;  // also carries k_scaling
  double gamma = 2.0;
  double alpha = 0.25;
  LossWeights weights;
};

// Probability clamp applied before taking logs.
inline constexpr double kProbabilityClamp = 1e-12;

// Sigmoid focal loss for one class score.
//   positive: -alpha * (1 - p)^gamma * ln p
//   negative: -(1 - alpha) * p^gamma * ln(1 - p)
double FocalLoss(double prob, bool is_positive, double gamma, double alpha);

// L1 over (r, z, l, w, h, sin t, cos t) plus k_scaling times the azimuth
// pair L1.
double PolarBoxL1(const PolarBox& pred, const PolarBox& gt, double k_scaling);

double VelocityL1(const PolarVelocity& pred, const PolarVelocity& gt);

struct PredictionHead {
  BoxEncoding encoding;
  std::vector<double> class_probs;
  PolarVelocity velocity;
};

struct Target {
  PolarBox box;
  int class_id = 0;
  PolarVelocity velocity;
};

struct LossBreakdown {
  double class_term = 0.0;
  double box_term = 0.0;
  double velocity_term = 0.0;
  double total = 0.0;
  // Weighted positive-class + box + velocity loss of the prediction matched
  // to each target; zero for unmatched targets.
  std::vector<double> per_gt;
};

// Matched predictions: decoded box L1, velocity L1, focal positive for the
// target class and focal negative for all others. Unmatched predictions only
// add focal negatives. Throws InvalidArgument on a malformed assignment.
LossBreakdown TotalMatchingLoss(std::span<const PredictionHead> preds,
                                std::span<const Target> targets,
                                const Assignment& assignment,
                                const LossConfig& config);

// Partials with respect to the raw regression outputs, in this order.
enum GradientIndex : int {
  kGradR = 0,
  kGradSinA,
  kGradCosA,
  kGradZ,
  kGradL,
  kGradW,
  kGradH,
  kGradSinT,
  kGradCosT,
  kGradVRad,
  kGradVTan,
  kGradientSize,
};

using Gradient = std::array<double, kGradientSize>;
using ParameterVector = std::array<double, kGradientSize>;

ParameterVector PackParameters(const BoxEncoding& enc,
                               const PolarVelocity& velocity);
void UnpackParameters(const ParameterVector& params, BoxEncoding* enc,
                      PolarVelocity* velocity);

// Weighted box + velocity L1 of one matched pair; the function whose
// gradient LossGradient returns.
double PairRegressionLoss(const BoxEncoding& enc, const PolarVelocity& velocity,
                          const Target& target, const LossConfig& config);

// Residuals closer than this to zero count as an L1 kink.
inline constexpr double kKinkTolerance = 1e-7;

// Analytic gradient of PairRegressionLoss through sigmoid, exp and the
// angle-pair normalization. Throws KinkError when any residual is within
// kKinkTolerance of zero.
Gradient LossGradient(const BoxEncoding& enc, const PolarVelocity& velocity,
                      const Target& target, const LossConfig& config);

// Central differences of PairRegressionLoss with step `step`, evaluated in
// extended precision.
Gradient FiniteDifferenceGradient(const BoxEncoding& enc,
                                  const PolarVelocity& velocity,
                                  const Target& target,
                                  const LossConfig& config,
                                  double step = 1e-6);

// max_i |a_i - n_i| / max(|a_i|, |n_i|); components that are both exactly
// zero count as zero error.
double MaxRelativeError(const Gradient& analytic, const Gradient& numeric);

// d(a, b)/|(a, b)| with respect to (a, b); rows are (sin, cos) outputs.
Eigen::Matrix2d NormalizedPairJacobian(double a, double b);

}  // namespace polar3d

#endif  // POLAR3D_LOSS_H_
