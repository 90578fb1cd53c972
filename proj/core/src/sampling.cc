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

#include "polar3d/sampling.h"

#include <cmath>

#include "polar3d/error.h"

namespace polar3d {

FeatureMap::FeatureMap(int width, int height, int channels, double stride)
    : FeatureMap(width, height, channels, stride,
                 std::vector<double>(static_cast<std::size_t>(
                     std::max(width, 0)) * std::max(height, 0) *
                     std::max(channels, 0))) {}

FeatureMap::FeatureMap(int width, int height, int channels, double stride,
                       std::vector<double> values)
    : width_(width),
      height_(height),
      channels_(channels),
      stride_(stride),
      values_(std::move(values)) {
  if (width <= 0 || height <= 0 || channels <= 0) {
    throw InvalidArgument("feature map dimensions must be positive");
  }
  if (!(stride > 0.0) || !std::isfinite(stride)) {
    throw InvalidArgument("feature map stride must be positive");
  }
  if (values_.size() !=
      static_cast<std::size_t>(width) * height * channels) {
    throw InvalidArgument("feature map value count does not match shape");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw InvalidArgument("non-finite feature value");
  }
}

FeatureMap FeatureMap::CoveringImage(const ImageSize& size, int channels,
                                     double stride) {
  if (!(stride > 0.0)) throw InvalidArgument("stride must be positive");
  // Pixels reach up to (but exclude) width, so the last cell center must be
  // at or beyond width / stride.
  const int w = static_cast<int>(std::ceil(size.width / stride)) + 1;
  const int h = static_cast<int>(std::ceil(size.height / stride)) + 1;
  return FeatureMap(w, h, channels, stride);
}

FeatureSample BilinearSample(const FeatureMap& map, double u, double v) {
  FeatureSample out;
  out.values.assign(map.channels(), 0.0);
  if (!std::isfinite(u) || !std::isfinite(v)) return out;

  const double x = u / map.stride();
  const double y = v / map.stride();
  if (x < 0.0 || y < 0.0 || x > map.width() - 1 || y > map.height() - 1) {
    return out;
  }

  int x0 = static_cast<int>(std::floor(x));
  int y0 = static_cast<int>(std::floor(y));
  // On the last row/column the upper neighbor would be off-grid; step back so
  // the blend weight lands entirely on the boundary cell.
  if (x0 == map.width() - 1 && x0 > 0) --x0;
  if (y0 == map.height() - 1 && y0 > 0) --y0;
  const int x1 = std::min(x0 + 1, map.width() - 1);
  const int y1 = std::min(y0 + 1, map.height() - 1);
  const double fx = x - x0;
  const double fy = y - y0;

  for (int c = 0; c < map.channels(); ++c) {
    const double top = (1.0 - fx) * map.at(x0, y0, c) + fx * map.at(x1, y0, c);
    const double bottom =
        (1.0 - fx) * map.at(x0, y1, c) + fx * map.at(x1, y1, c);
    out.values[c] = (1.0 - fy) * top + fy * bottom;
  }
  out.valid = true;
  return out;
}

std::vector<FeatureSample> SampleCenterFeatures(
    const Eigen::Vector3d& center_ego, const Rig& rig,
    std::span<const FeatureMap> maps) {
  if (maps.size() != rig.cameras.size()) {
    throw InvalidArgument("need exactly one feature map per camera");
  }
  std::vector<FeatureSample> samples;
  samples.reserve(maps.size());
  for (int k = 0; k < rig.size(); ++k) {
    const auto px = ProjectToView(center_ego, rig.cameras[k], k);
    if (!px) {
      samples.push_back({std::vector<double>(maps[k].channels(), 0.0), false});
      continue;
    }
    samples.push_back(BilinearSample(maps[k], px->u, px->v));
  }
  return samples;
}

std::vector<PixelPoint> ContextPoints(const PixelPoint& center,
                                      std::span<const PixelOffset> offsets) {
  std::vector<PixelPoint> points;
  points.reserve(offsets.size());
  for (const auto& off : offsets) {
    if (!std::isfinite(off.du) || !std::isfinite(off.dv)) {
      throw InvalidArgument("context offset is not finite");
    }
    PixelPoint p = center;
    p.u += off.du;
    p.v += off.dv;
    points.push_back(p);
  }
  return points;
}

}  // namespace polar3d
