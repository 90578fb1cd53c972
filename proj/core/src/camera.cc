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

#include "polar3d/camera.h"

#include <cmath>
#include <numbers>

#include <Eigen/Geometry>

#include "polar3d/error.h"

namespace polar3d {
namespace {

constexpr double kRotationTolerance = 1e-9;

void CheckFinite(const Eigen::Vector3d& p) {
  if (!p.allFinite()) throw InvalidArgument("point has non-finite entries");
}

// Rotation taking ego axes to the camera axes of a camera looking along +x:
// camera x = -ego y, camera y = -ego z, camera z = ego x.
Eigen::Matrix3d ForwardCameraRotation() {
  Eigen::Matrix3d r;
  r << 0.0, -1.0, 0.0,  //
      0.0, 0.0, -1.0,   //
      1.0, 0.0, 0.0;
  return r;
}

}  // namespace

Eigen::Matrix3d Intrinsics::Matrix() const {
  Eigen::Matrix3d k;
  k << fx, 0.0, cx,  //
      0.0, fy, cy,   //
      0.0, 0.0, 1.0;
  return k;
}

Eigen::Matrix3d RotationZ(double yaw) {
  const double c = std::cos(yaw);
  const double s = std::sin(yaw);
  Eigen::Matrix3d r;
  r << c, -s, 0.0,  //
      s, c, 0.0,    //
      0.0, 0.0, 1.0;
  return r;
}

RigidTransform RigidTransform::FromYaw(double yaw,
                                       const Eigen::Vector3d& translation) {
  return {RotationZ(yaw), translation};
}

RigidTransform RigidTransform::Inverse() const {
  const Eigen::Matrix3d rt = rotation.transpose();
  return {rt, -(rt * translation)};
}

RigidTransform RigidTransform::operator*(const RigidTransform& other) const {
  return {rotation * other.rotation, rotation * other.translation + translation};
}

void RigidTransform::Validate() const {
  if (!rotation.allFinite() || !translation.allFinite()) {
    throw InvalidArgument("rigid transform has non-finite entries");
  }
  const double ortho =
      (rotation * rotation.transpose() - Eigen::Matrix3d::Identity())
          .cwiseAbs()
          .maxCoeff();
  if (ortho > kRotationTolerance ||
      std::abs(rotation.determinant() - 1.0) > kRotationTolerance) {
    throw InvalidArgument("rotation is not a proper orthonormal matrix");
  }
}

void CameraModel::Validate() const {
  if (!(intrinsics.fx > 0.0) || !(intrinsics.fy > 0.0) ||
      !std::isfinite(intrinsics.fx) || !std::isfinite(intrinsics.fy) ||
      !std::isfinite(intrinsics.cx) || !std::isfinite(intrinsics.cy)) {
    throw InvalidArgument("camera focal lengths must be positive and finite");
  }
  if (image_size.width <= 0 || image_size.height <= 0) {
    throw InvalidArgument("camera image size must be positive");
  }
  ego_to_camera.Validate();
}

Eigen::Vector3d CameraModel::Center() const {
  return ego_to_camera.Inverse().translation;
}

void Rig::Validate() const {
  if (cameras.empty()) throw InvalidArgument("rig has no cameras");
  for (const auto& cam : cameras) cam.Validate();
}

Eigen::Vector3d PolarCenter(const PolarBox& box) {
  return {box.r * box.cos_a, box.r * box.sin_a, box.z};
}

std::optional<PixelPoint> ProjectUnbounded(const Eigen::Vector3d& point_ego,
                                           const CameraModel& cam, int view) {
  CheckFinite(point_ego);
  const Eigen::Vector3d pc = cam.ego_to_camera.Apply(point_ego);
  if (pc.z() <= kMinDepth) return std::nullopt;
  const auto& k = cam.intrinsics;
  PixelPoint px;
  px.u = k.fx * (pc.x() / pc.z()) + k.cx;
  px.v = k.fy * (pc.y() / pc.z()) + k.cy;
  px.depth = pc.z();
  px.view = view;
  return px;
}

std::optional<PixelPoint> ProjectToView(const Eigen::Vector3d& point_ego,
                                        const CameraModel& cam, int view) {
  auto px = ProjectUnbounded(point_ego, cam, view);
  if (!px) return std::nullopt;
  if (px->u < 0.0 || px->u >= cam.image_size.width || px->v < 0.0 ||
      px->v >= cam.image_size.height) {
    return std::nullopt;
  }
  return px;
}

std::optional<PixelPoint> ProjectToView(const PolarBox& box,
                                        const CameraModel& cam, int view) {
  return ProjectToView(PolarCenter(box), cam, view);
}

Ray PixelRay(double u, double v, const CameraModel& cam) {
  if (!std::isfinite(u) || !std::isfinite(v)) {
    throw InvalidArgument("pixel has non-finite coordinates");
  }
  const auto& k = cam.intrinsics;
  const Eigen::Vector3d dir_cam((u - k.cx) / k.fx, (v - k.cy) / k.fy, 1.0);
  const RigidTransform cam_to_ego = cam.ego_to_camera.Inverse();
  Ray ray;
  ray.origin = cam_to_ego.translation;
  ray.direction = (cam_to_ego.rotation * dir_cam).normalized();
  return ray;
}

double DistanceToRay(const Eigen::Vector3d& point, const Ray& ray) {
  const Eigen::Vector3d d = point - ray.origin;
  const double t = d.dot(ray.direction);
  if (t <= 0.0) return d.norm();
  return (d - t * ray.direction).norm();
}

Rig MakeSymmetricRig(int num_cameras, const Intrinsics& intrinsics,
                     const Eigen::Vector3d& mount, const ImageSize& size) {
  if (num_cameras < 2) {
    throw InvalidArgument("a symmetric rig needs at least two cameras");
  }
  const Eigen::Matrix3d forward = ForwardCameraRotation();
  Rig rig;
  rig.cameras.reserve(num_cameras);
  for (int k = 0; k < num_cameras; ++k) {
    const double yaw = 2.0 * std::numbers::pi * k / num_cameras;
    const Eigen::Matrix3d rz = RotationZ(yaw);
    CameraModel cam;
    cam.intrinsics = intrinsics;
    cam.image_size = size;
    // camera -> ego is (rz * forward^T, rz * mount); store its inverse.
    cam.ego_to_camera.rotation = forward * rz.transpose();
    cam.ego_to_camera.translation = -(forward * mount);
    cam.Validate();
    rig.cameras.push_back(cam);
  }
  return rig;
}

Rig MakeDefaultRig() {
  return MakeSymmetricRig(6, Intrinsics{1266.0, 1266.0, 800.0, 450.0},
                          Eigen::Vector3d(1.0, 0.0, 1.5),
                          ImageSize{1600, 900});
}

std::optional<PixelPoint> TemporalProject(const Eigen::Vector3d& point_ego,
                                          const CameraModel& cam,
                                          const EgoPose& pose, int view) {
  CheckFinite(point_ego);
  return ProjectToView(pose.current_to_past.Apply(point_ego), cam, view);
}

}  // namespace polar3d
