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

#ifndef POLAR3D_FIXTURES_H_
#define POLAR3D_FIXTURES_H_

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "polar3d/assignment.h"
#include "polar3d/loss.h"

namespace polar3d {

// Two objects at the same 48 m planar range, one on the +x axis and one on
// the 45 degree diagonal. A 35 m x 50 m rectangle (|x| < 35, |y| < 50) drops
// the on-axis object and keeps the diagonal one; a 50 m circle keeps both.
struct RangeAmbiguityFixture {
  std::array<CartesianBox, 2> objects;
  PerceptionRange rectangular;
  PerceptionRange circular;
};
RangeAmbiguityFixture MakeRangeAmbiguityFixture();

// Two ground truths 10 degrees apart in azimuth (r = 30 m and 31 m) and two
// predictions, each 0.5 degrees from one GT's azimuth and 1 m off that GT
// radially (landing on the other GT's range). With k_scaling = 1 the radial
// term wins and both predictions swap; with k_scaling = 20 each prediction
// goes to its azimuth-near GT.
struct ScalingFixture {
  std::vector<ScoredPrediction> preds;
  std::vector<LabeledBox> gts;
  Assignment azimuth_correct;  // pred i -> gt i
};
ScalingFixture MakeScalingFixture();

struct GradientFixture {
  BoxEncoding encoding;
  PolarVelocity velocity;
  Target target;
};

// Random interior encoding and target whose L1 residuals all exceed
// `min_residual`, so central differences never straddle a kink.
GradientFixture RandomGradientFixture(std::mt19937_64& rng,
                                      const LossConfig& config,
                                      double min_residual = 1e-3);

}  // namespace polar3d

#endif  // POLAR3D_FIXTURES_H_
