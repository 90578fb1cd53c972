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

#ifndef POLAR3D_SAMPLING_H_
#define POLAR3D_SAMPLING_H_

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "polar3d/camera.h"

namespace polar3d {

// Row-major grid of C-channel cells. Pixel (u, v) maps to cell coordinates
// (u / stride, v / stride); cell centers sit at integer coordinates.
class FeatureMap {
 public:
  FeatureMap() = default;
  // Zero-filled map. Throws InvalidArgument on non-positive dimensions.
  FeatureMap(int width, int height, int channels, double stride = 1.0);
  // Takes ownership of `values` (size width * height * channels).
  FeatureMap(int width, int height, int channels, double stride,
             std::vector<double> values);

  // Smallest map whose cell grid covers every pixel of `size` at `stride`.
  static FeatureMap CoveringImage(const ImageSize& size, int channels,
                                  double stride);

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  double stride() const { return stride_; }

  double& at(int x, int y, int c) { return values_[Index(x, y, c)]; }
  double at(int x, int y, int c) const { return values_[Index(x, y, c)]; }
  std::span<const double> values() const { return values_; }

 private:
  std::size_t Index(int x, int y, int c) const {
    return (static_cast<std::size_t>(y) * width_ + x) * channels_ + c;
  }

  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  double stride_ = 1.0;
  std::vector<double> values_;
};

// An invalid sample always carries an all-zero vector.
struct FeatureSample {
  std::vector<double> values;
  bool valid = false;
};

// Bilinear blend of the four cells around (u, v). Points whose cell
// coordinates fall outside [0, W-1] x [0, H-1] (or are non-finite) yield an
// invalid zero sample.
FeatureSample BilinearSample(const FeatureMap& map, double u, double v);

// Projects `center_ego` into every view of `rig` and samples that view's
// map. Views where the point is invisible yield invalid zero samples.
// Throws InvalidArgument when maps.size() != rig.size().
std::vector<FeatureSample> SampleCenterFeatures(
    const Eigen::Vector3d& center_ego, const Rig& rig,
    std::span<const FeatureMap> maps);

struct PixelOffset {
  double du = 0.0;
  double dv = 0.0;
};

// Default number of context points per view.
inline constexpr std::size_t kDefaultContextPointCount = 4;

// center + offset for each offset; view and depth carried over.
std::vector<PixelPoint> ContextPoints(const PixelPoint& center,
                                      std::span<const PixelOffset> offsets);

}  // namespace polar3d

#endif  // POLAR3D_SAMPLING_H_
