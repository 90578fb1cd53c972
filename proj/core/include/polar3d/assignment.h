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

#ifndef POLAR3D_ASSIGNMENT_H_
#define POLAR3D_ASSIGNMENT_H_

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "polar3d/geometry.h"

namespace polar3d {

// Rows index ground-truth objects, columns index predictions.
using CostMatrix = Eigen::MatrixXd;

struct Match {
  int gt = 0;
  int pred = 0;

  friend bool operator==(const Match&, const Match&) = default;
};

// Injective in both coordinates, sorted by gt index.
using Assignment = std::vector<Match>;

// |r - r_gt| + k_scaling * (|sin a - sin a_gt| + |cos a - cos a_gt|).
// Only radial distance and azimuth take part; z, size and yaw do not.
double BoxCost(const PolarBox& pred, const PolarBox& gt, double k_scaling);

enum class ClassCostMode {
  kNegativeProbability,  // -p(gt class)
  kFocal,                // focal positive cost minus focal negative cost
};

struct ClassCostOptions {
  ClassCostMode mode = ClassCostMode::kNegativeProbability;
  double gamma = 2.0;
  double alpha = 0.25;
};

// Throws InvalidArgument if any probability is outside [0, 1] or
// gt_class is out of range.
double ClassCost(std::span<const double> class_probs, int gt_class,
                 const ClassCostOptions& options = {});

// Perception region a ground-truth object must lie in to take part in
// label assignment.
struct PerceptionRange {
  enum class Shape { kCircular, kRectangular };

  Shape shape = Shape::kCircular;
  double r_max = 50.0;  // circular: sqrt(x^2 + y^2) <= r_max
  double x_max = 50.0;  // rectangular: |x| < x_max && |y| < y_max
  double y_max = 50.0;

  static PerceptionRange Circular(double r_max);
  static PerceptionRange Rectangular(double x_max, double y_max);

  bool Contains(double x, double y) const;
};

struct RangeFilterResult {
  std::vector<CartesianBox> kept;
  std::vector<CartesianBox> dropped;
  std::vector<std::size_t> kept_indices;
  std::vector<std::size_t> dropped_indices;
};

RangeFilterResult FilterPerceptionRange(std::span<const CartesianBox> gts,
                                        const PerceptionRange& range);

struct ScoredPrediction {
  PolarBox box;
  std::vector<double> class_probs;
};

struct LabeledBox {
  PolarBox box;
  int class_id = 0;
};

// Entry (gt j, pred i) = ClassCost + BoxCost. Empty inputs give an empty
// (0 x N or M x 0) matrix.
CostMatrix BuildCostMatrix(std::span<const ScoredPrediction> preds,
                           std::span<const LabeledBox> gts, double k_scaling,
                           const ClassCostOptions& class_options = {});

// Minimum-cost assignment of size min(M, N). Rectangular inputs are padded to
// square with a sentinel cost; padded pairs are dropped from the result.
// Throws InvalidArgument on non-finite entries.
Assignment Hungarian(const CostMatrix& costs);

// Largest min(M, N) BruteForceAssign accepts.
inline constexpr int kBruteForceLimit = 8;

// Exhaustive search over injective maps; throws InvalidArgument when
// min(M, N) > kBruteForceLimit.
Assignment BruteForceAssign(const CostMatrix& costs);

// Sum of costs(gt, pred) over the pairs, in gt order.
double TotalCost(const CostMatrix& costs, const Assignment& assignment);

// Throws InvalidArgument unless `assignment` is injective and in range.
void ValidateAssignment(const Assignment& assignment, int num_gts,
                        int num_preds);

}  // namespace polar3d

#endif  // POLAR3D_ASSIGNMENT_H_
