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

#include "polar3d/eval.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "polar3d/error.h"

namespace polar3d {
namespace {

struct RankedPrediction {
  double score;
  std::size_t frame;
  std::size_t index;
};

// Greedy center-distance matching over all frames. Returns, in visiting
// order, the frame/index of each prediction and the GT it matched (or -1).
struct GreedyMatch {
  std::vector<RankedPrediction> order;
  std::vector<int> matched_gt;
};

GreedyMatch MatchByScore(std::span<const CenterFrame> frames,
                         double threshold) {
  GreedyMatch out;
  for (std::size_t f = 0; f < frames.size(); ++f) {
    for (std::size_t i = 0; i < frames[f].preds.size(); ++i) {
      out.order.push_back({frames[f].preds[i].score, f, i});
    }
  }
  std::stable_sort(out.order.begin(), out.order.end(),
                   [](const RankedPrediction& a, const RankedPrediction& b) {
                     return a.score > b.score;
                   });
  std::vector<std::vector<char>> taken(frames.size());
  for (std::size_t f = 0; f < frames.size(); ++f) {
    taken[f].assign(frames[f].gts.size(), 0);
  }
  out.matched_gt.reserve(out.order.size());
  for (const auto& p : out.order) {
    const CenterFrame& frame = frames[p.frame];
    const Eigen::Vector2d& c = frame.preds[p.index].center;
    int best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t g = 0; g < frame.gts.size(); ++g) {
      if (taken[p.frame][g]) continue;
      const double d = (frame.gts[g] - c).norm();
      if (d <= threshold && d < best_dist) {
        best = static_cast<int>(g);
        best_dist = d;
      }
    }
    if (best >= 0) taken[p.frame][best] = 1;
    out.matched_gt.push_back(best);
  }
  return out;
}

}  // namespace

double AlignedIoU(const PolarBox& a, const PolarBox& b) {
  const double inter =
      std::min(a.l, b.l) * std::min(a.w, b.w) * std::min(a.h, b.h);
  const double va = a.l * a.w * a.h;
  const double vb = b.l * b.w * b.h;
  return inter / (va + vb - inter);
}

TPErrors ComputeTpErrors(std::span<const TpPair> pairs) {
  if (pairs.empty()) {
    throw InvalidArgument("TP errors need at least one matched pair");
  }
  TPErrors sum;
  for (const auto& p : pairs) {
    const double dx = p.pred.r * p.pred.cos_a - p.gt.r * p.gt.cos_a;
    const double dy = p.pred.r * p.pred.sin_a - p.gt.r * p.gt.sin_a;
    sum.ate += std::hypot(dx, dy);
    sum.ase += 1.0 - AlignedIoU(p.pred, p.gt);
    sum.aoe += std::abs(WrapAngle(YawOf(p.pred) - YawOf(p.gt)));
    const CartesianVelocity vp = VelocityPolarToCartesian(
        p.pred_velocity, p.pred.sin_a, p.pred.cos_a);
    const CartesianVelocity vg =
        VelocityPolarToCartesian(p.gt_velocity, p.gt.sin_a, p.gt.cos_a);
    sum.ave += std::hypot(vp.vx - vg.vx, vp.vy - vg.vy);
  }
  const double n = static_cast<double>(pairs.size());
  return {sum.ate / n, sum.ase / n, sum.aoe / n, sum.ave / n};
}

std::optional<double> AveragePrecisionCenterDistance(
    std::span<const CenterFrame> frames, double threshold) {
  if (!(threshold > 0.0)) throw InvalidArgument("threshold must be positive");
  std::size_t num_gt = 0;
  for (const auto& f : frames) num_gt += f.gts.size();
  if (num_gt == 0) return std::nullopt;

  const GreedyMatch match = MatchByScore(frames, threshold);
  const std::size_t n = match.order.size();
  if (n == 0) return 0.0;

  std::vector<double> precision(n), recall(n);
  double tp = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (match.matched_gt[i] >= 0) tp += 1.0;
    precision[i] = tp / static_cast<double>(i + 1);
    recall[i] = tp / static_cast<double>(num_gt);
  }
  for (std::size_t i = n - 1; i > 0; --i) {
    precision[i - 1] = std::max(precision[i - 1], precision[i]);
  }

  double ap = 0.0;
  double prev_recall = 0.0;
  double prev_precision = precision[0];
  for (std::size_t i = 0; i < n; ++i) {
    ap += (recall[i] - prev_recall) * 0.5 * (precision[i] + prev_precision);
    prev_recall = recall[i];
    prev_precision = precision[i];
  }
  return ap;
}

std::optional<double> AveragePrecisionCenterDistance(
    std::span<const ScoredCenter> preds, std::span<const Eigen::Vector2d> gts,
    double threshold) {
  const CenterFrame frame{{preds.begin(), preds.end()},
                          {gts.begin(), gts.end()}};
  return AveragePrecisionCenterDistance(std::span<const CenterFrame>(&frame, 1),
                                        threshold);
}

std::optional<double> MeanAveragePrecision(
    std::span<const CenterFrame> frames) {
  double sum = 0.0;
  for (double t : kApDistanceThresholds) {
    const auto ap = AveragePrecisionCenterDistance(frames, t);
    if (!ap) return std::nullopt;
    sum += *ap;
  }
  return sum / static_cast<double>(kApDistanceThresholds.size());
}

void NdsInput::Validate() const {
  if (!(map >= 0.0 && map <= 1.0)) {
    throw InvalidArgument("mAP must lie in [0, 1]");
  }
  for (double e : tp_errors) {
    if (!(e >= 0.0) || !std::isfinite(e)) {
      throw InvalidArgument("TP errors must be finite and >= 0");
    }
  }
}

double Nds(const NdsInput& input) {
  input.Validate();
  double sum = 5.0 * input.map;
  for (double e : input.tp_errors) sum += 1.0 - std::min(1.0, e);
  return sum / 10.0;
}

EvaluationReport Evaluate(const Scene& scene, const DetectionSet& detections,
                          double tp_threshold, double maae) {
  if (scene.frames.size() != detections.frames.size()) {
    throw InvalidArgument("scene and detections differ in frame count");
  }
  EvaluationReport report;
  std::vector<CenterFrame> frames(scene.frames.size());
  for (std::size_t f = 0; f < scene.frames.size(); ++f) {
    for (const auto& obj : scene.frames[f].objects) {
      frames[f].gts.emplace_back(obj.box.x, obj.box.y);
    }
    for (const auto& det : detections.frames[f].detections) {
      frames[f].preds.push_back(
          {{det.box.r * det.box.cos_a, det.box.r * det.box.sin_a}, det.score});
    }
    report.num_ground_truth += static_cast<int>(frames[f].gts.size());
    report.num_predictions += static_cast<int>(frames[f].preds.size());
  }

  bool have_all = true;
  double ap_sum = 0.0;
  for (std::size_t i = 0; i < kApDistanceThresholds.size(); ++i) {
    report.ap[i] = AveragePrecisionCenterDistance(frames, kApDistanceThresholds[i]);
    if (report.ap[i]) {
      ap_sum += *report.ap[i];
    } else {
      have_all = false;
    }
  }
  if (have_all) report.map = ap_sum / kApDistanceThresholds.size();

  const GreedyMatch match = MatchByScore(frames, tp_threshold);
  std::vector<TpPair> pairs;
  for (std::size_t i = 0; i < match.order.size(); ++i) {
    if (match.matched_gt[i] < 0) continue;
    const auto& rank = match.order[i];
    const Detection& det = detections.frames[rank.frame].detections[rank.index];
    const GroundTruthObject& gt =
        scene.frames[rank.frame].objects[match.matched_gt[i]];
    pairs.push_back({det.box, det.velocity, ObjectPolarBox(gt),
                     ObjectPolarVelocity(gt)});
  }
  report.num_true_positives = static_cast<int>(pairs.size());
  if (!pairs.empty()) report.tp = ComputeTpErrors(pairs);

  // Without matches every TP error saturates at 1.
  const TPErrors tp = report.tp.value_or(TPErrors{1.0, 1.0, 1.0, 1.0});
  report.nds = Nds({report.map.value_or(0.0),
                    {tp.ate, tp.ase, tp.aoe, tp.ave, maae}});
  return report;
}

}  // namespace polar3d
