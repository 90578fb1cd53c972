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

#ifndef POLAR3D_SCENE_H_
#define POLAR3D_SCENE_H_

#include <vector>

#include "polar3d/camera.h"
#include "polar3d/geometry.h"

namespace polar3d {

inline constexpr int kSceneSchemaVersion = 1;

// Boxes and velocities are expressed in the ego frame of the frame they
// belong to; velocities are over-ground velocities in those axes.
struct GroundTruthObject {
  int id = 0;
  int class_id = 0;
  CartesianBox box;
  CartesianVelocity velocity;
};

struct Frame {
  double t = 0.0;
  // Ego frame at this timestamp -> ego frame of frame 0.
  RigidTransform ego_pose;
  std::vector<GroundTruthObject> objects;
};

struct Scene {
  Rig rig;
  std::vector<Frame> frames;

  // Throws InvalidArgument unless timestamps strictly increase and object
  // ids are unique within each frame.
  void Validate() const;
};

struct Detection {
  PolarBox box;
  std::vector<double> class_probs;
  PolarVelocity velocity;
  double score = 0.0;

  // Arg-max of class_probs; lowest index wins ties. -1 when empty.
  int ClassId() const;
};

struct DetectionFrame {
  double t = 0.0;
  std::vector<Detection> detections;
};

struct DetectionSet {
  std::vector<DetectionFrame> frames;

  // Throws InvalidArgument on scores outside [0, 1] or invalid boxes.
  void Validate() const;
};

// GT object as a polar box in its frame's ego coordinates.
PolarBox ObjectPolarBox(const GroundTruthObject& object);
PolarVelocity ObjectPolarVelocity(const GroundTruthObject& object);

}  // namespace polar3d

#endif  // POLAR3D_SCENE_H_
