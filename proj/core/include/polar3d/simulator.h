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

#ifndef POLAR3D_SIMULATOR_H_
#define POLAR3D_SIMULATOR_H_

#include <cstdint>

#include "polar3d/camera.h"
#include "polar3d/scene.h"

namespace polar3d {

enum class EgoTrajectory { kStatic, kStraight, kArc };

struct SceneConfig {
  int num_objects = 10;
  int num_frames = 20;
  double dt = 0.5;
  double min_speed = 0.0;
  double max_speed = 10.0;
  double r_min = 2.0;   // placement radius at frame 0, exclusive bounds
  double r_max = 50.0;
  int num_classes = 10;
  EgoTrajectory ego_trajectory = EgoTrajectory::kStatic;
  double ego_speed = 0.0;     // m/s, straight and arc
  double ego_yaw_rate = 0.0;  // rad/s, arc only
  // Omit objects from frames in which they sit beyond r_max.
  bool clip_to_range = true;
  std::uint64_t seed = 42;
  Rig rig = MakeDefaultRig();

  void Validate() const;
};

enum class NoiseSpace { kPolar, kCartesian };

struct NoiseModel {
  double radial_std = 0.0;      // m; in kCartesian mode, std of x and y
  double tangential_std = 0.0;  // rad of azimuth
  double z_std = 0.0;           // m
  double size_std = 0.0;        // relative
  double yaw_std = 0.0;         // rad
  double velocity_std = 0.0;    // m/s per polar component
  double score_std = 0.0;       // true-positive score = 1 - |N(0, score_std)|
  double drop_probability = 0.0;
  double false_positive_rate = 0.0;  // Poisson mean per frame
  double false_positive_max_score = 0.5;
  double false_positive_r_max = 50.0;
  int num_classes = 10;
  NoiseSpace space = NoiseSpace::kPolar;
  std::uint64_t seed = 0;

  void Validate() const;
};

// Deterministic in (config, seed). Objects start with r uniform in
// (r_min, r_max), uniform heading and constant velocity.
Scene GenerateScene(const SceneConfig& config);

// Rotates every object state by `phi` about ego z and moves the ego
// trajectory accordingly; the rig is unchanged.
Scene RotateScene(const Scene& scene, double phi);

// Perturbs each GT in its polar representation, drops with
// drop_probability and adds Poisson false positives uniform over the disk
// of radius false_positive_r_max. Surviving GT detections keep GT order and
// precede false positives.
DetectionSet RenderDetections(const Scene& scene, const NoiseModel& noise);

}  // namespace polar3d

#endif  // POLAR3D_SIMULATOR_H_
