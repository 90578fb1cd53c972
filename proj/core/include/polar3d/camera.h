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

#ifndef POLAR3D_CAMERA_H_
#define POLAR3D_CAMERA_H_

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "polar3d/geometry.h"

namespace polar3d {

// Camera frame: +z along the optical axis, +x right, +y down.

struct Intrinsics {
  double fx = 1.0;
  double fy = 1.0;
  double cx = 0.0;
  double cy = 0.0;

  Eigen::Matrix3d Matrix() const;
};

struct ImageSize {
  int width = 1;
  int height = 1;
};

// p_target = rotation * p_source + translation.
struct RigidTransform {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();

  static RigidTransform Identity() { return {}; }
  // Rotation about +z by `yaw` followed by `translation`.
  static RigidTransform FromYaw(double yaw,
                                const Eigen::Vector3d& translation =
                                    Eigen::Vector3d::Zero());

  Eigen::Vector3d Apply(const Eigen::Vector3d& p) const {
    return rotation * p + translation;
  }
  RigidTransform Inverse() const;
  // (*this) after `other`: p -> this(other(p)).
  RigidTransform operator*(const RigidTransform& other) const;

  // Throws InvalidArgument unless rotation is orthonormal with det +1
  // within 1e-9 and all entries are finite.
  void Validate() const;
};

struct CameraModel {
  Intrinsics intrinsics;
  RigidTransform ego_to_camera;
  ImageSize image_size;

  void Validate() const;
  // Optical center in ego coordinates.
  Eigen::Vector3d Center() const;
};

struct Rig {
  std::vector<CameraModel> cameras;

  int size() const { return static_cast<int>(cameras.size()); }
  void Validate() const;
};

// Maps current-frame ego coordinates into a past frame's ego coordinates.
struct EgoPose {
  RigidTransform current_to_past;
  double dt = 0.0;  // seconds between the two frames
};

struct PixelPoint {
  double u = 0.0;
  double v = 0.0;
  double depth = 0.0;  // along the optical axis, meters
  int view = 0;
};

struct Ray {
  Eigen::Vector3d origin = Eigen::Vector3d::Zero();     // ego frame
  Eigen::Vector3d direction = Eigen::Vector3d::UnitZ();  // unit, ego frame
};

// Points at or in front of the camera closer than this are culled.
inline constexpr double kMinDepth = 1e-6;

// Ego-frame center of a polar box: (r cos a, r sin a, z).
Eigen::Vector3d PolarCenter(const PolarBox& box);

// Pinhole projection of an ego-frame point. Returns nullopt when the
// camera-frame depth is <= kMinDepth or the pixel falls outside
// [0, width) x [0, height). Throws InvalidArgument on non-finite input.
std::optional<PixelPoint> ProjectToView(const Eigen::Vector3d& point_ego,
                                        const CameraModel& cam, int view = 0);
std::optional<PixelPoint> ProjectToView(const PolarBox& box,
                                        const CameraModel& cam, int view = 0);

// Projection without the image-bounds test; still culls points behind the
// camera. Useful when a caller wants to know where an off-image point lands.
std::optional<PixelPoint> ProjectUnbounded(const Eigen::Vector3d& point_ego,
                                           const CameraModel& cam,
                                           int view = 0);

// Ray from the optical center through pixel (u, v), in ego coordinates.
Ray PixelRay(double u, double v, const CameraModel& cam);

// Distance from `point` to the half-line described by `ray`.
double DistanceToRay(const Eigen::Vector3d& point, const Ray& ray);

// K cameras with identical intrinsics. Camera k (0-based) looks along
// ego yaw 2*pi*k/K and sits at Rz(2*pi*k/K) * mount. Camera 0 looks along +x.
// Throws InvalidArgument for K < 2.
Rig MakeSymmetricRig(int num_cameras, const Intrinsics& intrinsics,
                     const Eigen::Vector3d& mount, const ImageSize& size);

// A 6 x 1600x900 surround rig (fx = fy = 1266) mounted 1.5 m up and
// 1 m forward of the ego origin.
Rig MakeDefaultRig();

// ProjectToView(pose.current_to_past.Apply(point), cam).
std::optional<PixelPoint> TemporalProject(const Eigen::Vector3d& point_ego,
                                          const CameraModel& cam,
                                          const EgoPose& pose, int view = 0);

Eigen::Matrix3d RotationZ(double yaw);

}  // namespace polar3d

#endif  // POLAR3D_CAMERA_H_
