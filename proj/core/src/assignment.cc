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

#include "polar3d/assignment.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "polar3d/error.h"

namespace polar3d {

double BoxCost(const PolarBox& pred, const PolarBox& gt, double k_scaling) {
  return std::abs(pred.r - gt.r) +
         k_scaling * (std::abs(pred.sin_a - gt.sin_a) +
                      std::abs(pred.cos_a - gt.cos_a));
}

double ClassCost(std::span<const double> class_probs, int gt_class,
                 const ClassCostOptions& options) {
  for (double p : class_probs) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw InvalidArgument("class probability outside [0, 1]");
    }
  }
  if (gt_class < 0 || gt_class >= static_cast<int>(class_probs.size())) {
    throw InvalidArgument("ground-truth class index out of range");
  }
  const double p = class_probs[gt_class];
  switch (options.mode) {
    case ClassCostMode::kNegativeProbability:
      return -p;
    case ClassCostMode::kFocal: {
      constexpr double kEps = 1e-12;
      const double pc = std::clamp(p, kEps, 1.0 - kEps);
      const double pos = options.alpha * std::pow(1.0 - pc, options.gamma) *
                         -std::log(pc);
      const double neg = (1.0 - options.alpha) * std::pow(pc, options.gamma) *
                         -std::log(1.0 - pc);
      return pos - neg;
    }
  }
  return -p;
}

PerceptionRange PerceptionRange::Circular(double r_max) {
  if (!(r_max > 0.0)) throw InvalidArgument("r_max must be positive");
  PerceptionRange range;
  range.shape = Shape::kCircular;
  range.r_max = r_max;
  return range;
}

PerceptionRange PerceptionRange::Rectangular(double x_max, double y_max) {
  if (!(x_max > 0.0) || !(y_max > 0.0)) {
    throw InvalidArgument("rectangular bounds must be positive");
  }
  PerceptionRange range;
  range.shape = Shape::kRectangular;
  range.x_max = x_max;
  range.y_max = y_max;
  return range;
}

bool PerceptionRange::Contains(double x, double y) const {
  if (shape == Shape::kCircular) return std::hypot(x, y) <= r_max;
  return std::abs(x) < x_max && std::abs(y) < y_max;
}

RangeFilterResult FilterPerceptionRange(std::span<const CartesianBox> gts,
                                        const PerceptionRange& range) {
  RangeFilterResult result;
  for (std::size_t i = 0; i < gts.size(); ++i) {
    if (range.Contains(gts[i].x, gts[i].y)) {
      result.kept.push_back(gts[i]);
      result.kept_indices.push_back(i);
    } else {
      result.dropped.push_back(gts[i]);
      result.dropped_indices.push_back(i);
    }
  }
  return result;
}

CostMatrix BuildCostMatrix(std::span<const ScoredPrediction> preds,
                           std::span<const LabeledBox> gts, double k_scaling,
                           const ClassCostOptions& class_options) {
  CostMatrix costs(static_cast<Eigen::Index>(gts.size()),
                   static_cast<Eigen::Index>(preds.size()));
  for (std::size_t j = 0; j < gts.size(); ++j) {
    for (std::size_t i = 0; i < preds.size(); ++i) {
      costs(j, i) =
          ClassCost(preds[i].class_probs, gts[j].class_id, class_options) +
          BoxCost(preds[i].box, gts[j].box, k_scaling);
    }
  }
  return costs;
}

namespace {

// Shortest augmenting path with row/column potentials on an n x n matrix
// (rows <= cols is all the algorithm needs; callers pass a square one).
// Returns the column assigned to each row.
std::vector<int> SolveSquare(const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  const double inf = std::numeric_limits<double>::infinity();
  // 1-based bookkeeping; index 0 is the virtual root column.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = a(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= n; ++j) {
    if (p[j] != 0) row_to_col[p[j] - 1] = j - 1;
  }
  return row_to_col;
}

void CheckFinite(const CostMatrix& costs) {
  if (!costs.allFinite()) {
    throw InvalidArgument("cost matrix has non-finite entries");
  }
}

}  // namespace

Assignment Hungarian(const CostMatrix& costs) {
  CheckFinite(costs);
  const int m = static_cast<int>(costs.rows());
  const int n = static_cast<int>(costs.cols());
  if (m == 0 || n == 0) return {};

  const int size = std::max(m, n);
  const double max_abs = costs.cwiseAbs().maxCoeff();
  const double sentinel = max_abs * (std::min(m, n) + 1) + 1.0;
  Eigen::MatrixXd square = Eigen::MatrixXd::Constant(size, size, sentinel);
  square.topLeftCorner(m, n) = costs;

  const std::vector<int> row_to_col = SolveSquare(square);
  Assignment result;
  result.reserve(std::min(m, n));
  for (int row = 0; row < m; ++row) {
    const int col = row_to_col[row];
    if (col >= 0 && col < n) result.push_back({row, col});
  }
  return result;
}

namespace {

struct BruteForceSearch {
  const CostMatrix& costs;
  bool rows_smaller;
  int small;
  int large;
  std::vector<int> current;
  std::vector<char> taken;
  std::vector<int> best;
  double best_cost = std::numeric_limits<double>::infinity();

  double Entry(int s, int l) const {
    return rows_smaller ? costs(s, l) : costs(l, s);
  }

  void Recurse(int s, double acc) {
    if (s == small) {
      if (acc < best_cost) {
        best_cost = acc;
        best = current;
      }
      return;
    }
    for (int l = 0; l < large; ++l) {
      if (taken[l]) continue;
      taken[l] = 1;
      current[s] = l;
      Recurse(s + 1, acc + Entry(s, l));
      taken[l] = 0;
    }
  }
};

}  // namespace

Assignment BruteForceAssign(const CostMatrix& costs) {
  CheckFinite(costs);
  const int m = static_cast<int>(costs.rows());
  const int n = static_cast<int>(costs.cols());
  if (std::min(m, n) > kBruteForceLimit) {
    throw InvalidArgument("matrix too large for exhaustive assignment");
  }
  if (m == 0 || n == 0) return {};

  BruteForceSearch search{costs, m <= n, std::min(m, n), std::max(m, n),
                          std::vector<int>(std::min(m, n), -1),
                          std::vector<char>(std::max(m, n), 0), {}};
  search.Recurse(0, 0.0);

  Assignment result;
  for (int s = 0; s < search.small; ++s) {
    if (search.rows_smaller) {
      result.push_back({s, search.best[s]});
    } else {
      result.push_back({search.best[s], s});
    }
  }
  std::sort(result.begin(), result.end(),
            [](const Match& a, const Match& b) { return a.gt < b.gt; });
  return result;
}

double TotalCost(const CostMatrix& costs, const Assignment& assignment) {
  Assignment sorted = assignment;
  std::sort(sorted.begin(), sorted.end(),
            [](const Match& a, const Match& b) { return a.gt < b.gt; });
  double total = 0.0;
  for (const auto& m : sorted) total += costs(m.gt, m.pred);
  return total;
}

void ValidateAssignment(const Assignment& assignment, int num_gts,
                        int num_preds) {
  std::vector<char> gt_used(std::max(num_gts, 0), 0);
  std::vector<char> pred_used(std::max(num_preds, 0), 0);
  for (const auto& m : assignment) {
    if (m.gt < 0 || m.gt >= num_gts || m.pred < 0 || m.pred >= num_preds) {
      throw InvalidArgument("assignment index out of range");
    }
    if (gt_used[m.gt] || pred_used[m.pred]) {
      throw InvalidArgument("assignment repeats an index");
    }
    gt_used[m.gt] = 1;
    pred_used[m.pred] = 1;
  }
}

}  // namespace polar3d
