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

#ifndef POLAR3D_EVAL_H_
#define POLAR3D_EVAL_H_

#include <array>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "polar3d/scene.h"

namespace polar3d {

// True-positive error averages over matched pairs.
struct TPErrors {
  double ate = 0.0;  // planar center distance, m
  double ase = 0.0;  // 1 - IoU of center- and yaw-aligned boxes
  double aoe = 0.0;  // |wrapped yaw difference|, rad
  double ave = 0.0;  // planar velocity L2 difference, m/s
};

struct TpPair {
  PolarBox pred;
  PolarVelocity pred_velocity;
  PolarBox gt;
  PolarVelocity gt_velocity;
};

// IoU of two boxes sharing center and heading:
// prod(min dims) / (V_a + V_b - prod(min dims)).
double AlignedIoU(const PolarBox& a, const PolarBox& b);

// Throws InvalidArgument on an empty span.
TPErrors ComputeTpErrors(std::span<const TpPair> pairs);

struct ScoredCenter {
  Eigen::Vector2d center = Eigen::Vector2d::Zero();
  double score = 0.0;
};

// Predictions and ground-truth centers of one frame; predictions only match
// ground truth of their own frame.
struct CenterFrame {
  std::vector<ScoredCenter> preds;
  std::vector<Eigen::Vector2d> gts;
};

// Predictions are visited by descending score (ties by frame, then index)
// and each takes the nearest unmatched GT of its frame within
// `threshold`. AP is the trapezoidal area under the right-to-left precision
// envelope over the achieved recall points, starting from recall 0.
// Returns nullopt when there is no ground truth at all.
std::optional<double> AveragePrecisionCenterDistance(
    std::span<const CenterFrame> frames, double threshold);
std::optional<double> AveragePrecisionCenterDistance(
    std::span<const ScoredCenter> preds,
    std::span<const Eigen::Vector2d> gts, double threshold);

inline constexpr std::array<double, 4> kApDistanceThresholds = {0.5, 1.0, 2.0,
                                                                4.0};

// Mean of AP over kApDistanceThresholds.
std::optional<double> MeanAveragePrecision(std::span<const CenterFrame> frames);

struct NdsInput {
  double map = 0.0;
  // mATE, mASE, mAOE, mAVE, mAAE.
  std::array<double, 5> tp_errors = {};

  // Throws InvalidArgument unless map in [0, 1] and tp errors >= 0.
  void Validate() const;
};

// (5 * mAP + sum(1 - min(1, mTP))) / 10.
double Nds(const NdsInput& input);

// Class-agnostic desk-scale evaluation of a detection set against a scene.
struct EvaluationReport {
  std::array<std::optional<double>, 4> ap = {};  // per kApDistanceThresholds
  std::optional<double> map;
  std::optional<TPErrors> tp;
  int num_true_positives = 0;
  int num_predictions = 0;
  int num_ground_truth = 0;
  double nds = 0.0;
};

// TP errors use matches at `tp_threshold` meters. `maae` is taken as given
// (attribute error is not computed). Frames are paired by index; throws
// InvalidArgument when the frame counts differ.
EvaluationReport Evaluate(const Scene& scene, const DetectionSet& detections,
                          double tp_threshold = 2.0, double maae = 0.0);

}  // namespace polar3d

#endif  // POLAR3D_EVAL_H_
