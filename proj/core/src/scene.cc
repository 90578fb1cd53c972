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

#include "polar3d/scene.h"

#include <set>

#include "polar3d/error.h"

namespace polar3d {

void Scene::Validate() const {
  for (const auto& cam : rig.cameras) cam.Validate();
  for (std::size_t i = 0; i < frames.size(); ++i) {
    if (i > 0 && !(frames[i].t > frames[i - 1].t)) {
      throw InvalidArgument("frame timestamps must strictly increase");
    }
    frames[i].ego_pose.Validate();
    std::set<int> ids;
    for (const auto& obj : frames[i].objects) {
      if (!ids.insert(obj.id).second) {
        throw InvalidArgument("duplicate object id within a frame");
      }
      if (!(obj.box.l > 0.0 && obj.box.w > 0.0 && obj.box.h > 0.0)) {
        throw InvalidArgument("object box sizes must be positive");
      }
    }
  }
}

int Detection::ClassId() const {
  int best = -1;
  for (int c = 0; c < static_cast<int>(class_probs.size()); ++c) {
    if (best < 0 || class_probs[c] > class_probs[best]) best = c;
  }
  return best;
}

void DetectionSet::Validate() const {
  for (const auto& frame : frames) {
    for (const auto& det : frame.detections) {
      if (!(det.score >= 0.0 && det.score <= 1.0)) {
        throw InvalidArgument("detection score outside [0, 1]");
      }
      ValidatePolarBox(det.box);
    }
  }
}

PolarBox ObjectPolarBox(const GroundTruthObject& object) {
  return CartesianToPolar(object.box);
}

PolarVelocity ObjectPolarVelocity(const GroundTruthObject& object) {
  const PolarBox box = CartesianToPolar(object.box);
  return VelocityCartesianToPolar(object.velocity, box.sin_a, box.cos_a);
}

}  // namespace polar3d
