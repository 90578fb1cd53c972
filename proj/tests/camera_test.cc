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
#include <gtest/gtest.h>

#include "oracles.h"
#include "polar3d/error.h"

namespace polar3d {
namespace {

using testing::TestRng;

constexpr double kPi = std::numbers::pi;

CameraModel UnitCamera() {
  CameraModel cam;
  cam.intrinsics = {1.0, 1.0, 0.0, 0.0};
  cam.image_size = {1, 1};
  return cam;
}

// A point in camera `cam` at pixel (u, v) and optical depth `depth`.
Eigen::Vector3d PointAtPixel(const CameraModel& cam, double u, double v,
                             double depth) {
  const auto& k = cam.intrinsics;
  const Eigen::Vector3d p_cam((u - k.cx) / k.fx * depth,
                              (v - k.cy) / k.fy * depth, depth);
  return cam.ego_to_camera.Inverse().Apply(p_cam);
}

TEST(ProjectToView, OnAxisPoint) {
  const auto px = ProjectToView(Eigen::Vector3d(0, 0, 5), UnitCamera());
  ASSERT_TRUE(px.has_value());
  EXPECT_EQ(px->u, 0.0);
  EXPECT_EQ(px->v, 0.0);
  EXPECT_EQ(px->depth, 5.0);
}

TEST(ProjectToView, BehindCameraIsAbsent) {
  EXPECT_FALSE(ProjectToView(Eigen::Vector3d(0, 0, -1), UnitCamera()));
  EXPECT_FALSE(ProjectToView(Eigen::Vector3d(0, 0, 0), UnitCamera()));
  EXPECT_FALSE(ProjectUnbounded(Eigen::Vector3d(0, 0, -1), UnitCamera()));
}

TEST(ProjectToView, PinholeEvaluation) {
  CameraModel cam;
  cam.intrinsics = {100.0, 100.0, 320.0, 240.0};
  cam.image_size = {640, 480};
  const auto px = ProjectToView(Eigen::Vector3d(1, 0, 2), cam, 3);
  ASSERT_TRUE(px.has_value());
  EXPECT_DOUBLE_EQ(px->u, 370.0);
  EXPECT_DOUBLE_EQ(px->v, 240.0);
  EXPECT_EQ(px->view, 3);
}

TEST(ProjectToView, ImageBoundsAreHalfOpen) {
  CameraModel cam;
  cam.intrinsics = {100.0, 100.0, 0.0, 0.0};
  cam.image_size = {100, 100};
  EXPECT_TRUE(ProjectToView(Eigen::Vector3d(0, 0, 1), cam));
  EXPECT_FALSE(ProjectToView(Eigen::Vector3d(1, 0, 1), cam));  // u = 100
  EXPECT_FALSE(ProjectToView(Eigen::Vector3d(-0.01, 0, 1), cam));
  EXPECT_TRUE(ProjectUnbounded(Eigen::Vector3d(1, 0, 1), cam));
}

TEST(ProjectToView, PolarBoxCenter) {
  CameraModel cam;
  cam.intrinsics = {100.0, 100.0, 320.0, 240.0};
  cam.image_size = {640, 480};
  // Ego forward onto the optical axis: camera z = ego x, camera x = -ego y,
  // camera y = -ego z.
  cam.ego_to_camera.rotation << 0, -1, 0,  //
      0, 0, -1,                            //
      1, 0, 0;
  PolarBox box;
  box.r = 10.0;
  box.z = 0.0;
  const auto px = ProjectToView(box, cam);
  ASSERT_TRUE(px.has_value());
  EXPECT_DOUBLE_EQ(px->u, 320.0);
  EXPECT_DOUBLE_EQ(px->v, 240.0);
  EXPECT_DOUBLE_EQ(px->depth, 10.0);
}

TEST(ProjectToView, RejectsNonFinite) {
  EXPECT_THROW(ProjectToView(Eigen::Vector3d(NAN, 0, 1), UnitCamera()),
               InvalidArgument);
}

TEST(ProjectToView, MatchesPinholeOracleOnDefaultRig) {
  const Rig rig = MakeDefaultRig();
  TestRng rng(21);
  int visible = 0;
  for (int i = 0; i < 2000; ++i) {
    const Eigen::Vector3d p(rng.Uniform(-60, 60), rng.Uniform(-60, 60),
                            rng.Uniform(-3, 5));
    for (int k = 0; k < rig.size(); ++k) {
      const auto px = ProjectToView(p, rig.cameras[k], k);
      const Eigen::Vector3d ref = testing::PinholeProject(p, rig.cameras[k]);
      const bool in_image = ref.z() > kMinDepth && ref.x() >= 0 &&
                            ref.x() < 1600 && ref.y() >= 0 && ref.y() < 900;
      ASSERT_EQ(px.has_value(), in_image);
      if (!px) continue;
      ++visible;
      EXPECT_NEAR(px->u, ref.x(), 1e-9);
      EXPECT_NEAR(px->v, ref.y(), 1e-9);
      EXPECT_NEAR(px->depth, ref.z(), 1e-12);
      EXPECT_GT(px->depth, 0.0);
    }
  }
  EXPECT_GT(visible, 500);
}

TEST(PixelRay, PrincipalPoint) {
  const Ray ray = PixelRay(0.0, 0.0, UnitCamera());
  EXPECT_EQ(ray.direction, Eigen::Vector3d(0, 0, 1));
  EXPECT_EQ(ray.origin, Eigen::Vector3d::Zero());
}

TEST(PixelRay, InversePinhole) {
  CameraModel cam = UnitCamera();
  cam.intrinsics = {500.0, 500.0, 0.0, 0.0};
  const Ray ray = PixelRay(500.0, 0.0, cam);
  EXPECT_NEAR(ray.direction.x(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_EQ(ray.direction.y(), 0.0);
  EXPECT_NEAR(ray.direction.z(), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(PixelRay, ReprojectsToSamePixel) {
  const Rig rig = MakeDefaultRig();
  TestRng rng(22);
  double max_error = 0.0;
  for (int i = 0; i < 500; ++i) {
    const int k = rng.Int(0, rig.size() - 1);
    const CameraModel& cam = rig.cameras[k];
    const double u = rng.Uniform(0, 1600);
    const double v = rng.Uniform(0, 900);
    const Ray ray = PixelRay(u, v, cam);
    EXPECT_NEAR(ray.direction.norm(), 1.0, 1e-12);
    EXPECT_NEAR((ray.origin - cam.Center()).norm(), 0.0, 1e-12);
    for (double t : {1.0, 10.0, 50.0}) {
      const auto px = ProjectUnbounded(ray.origin + t * ray.direction, cam, k);
      ASSERT_TRUE(px.has_value());
      max_error = std::max(
          {max_error, std::abs(px->u - u), std::abs(px->v - v)});
    }
  }
  EXPECT_LT(max_error, 1e-9);
}

TEST(PixelRay, PassesThroughProjectedPoint) {
  const Rig rig = MakeDefaultRig();
  TestRng rng(23);
  int checked = 0;
  for (int i = 0; i < 2000; ++i) {
    const Eigen::Vector3d p(rng.Uniform(-60, 60), rng.Uniform(-60, 60),
                            rng.Uniform(-3, 5));
    for (int k = 0; k < rig.size(); ++k) {
      const auto px = ProjectToView(p, rig.cameras[k], k);
      if (!px) continue;
      ++checked;
      const Ray ray = PixelRay(px->u, px->v, rig.cameras[k]);
      EXPECT_LT(DistanceToRay(p, ray), 1e-9);
    }
  }
  EXPECT_GT(checked, 500);
}

TEST(DistanceToRay, PerpendicularOffset) {
  const Ray ray{Eigen::Vector3d(1, 1, 0), Eigen::Vector3d(1, 0, 0)};
  EXPECT_DOUBLE_EQ(DistanceToRay(Eigen::Vector3d(5, 4, 0), ray), 3.0);
}

TEST(MakeSymmetricRig, AdjacentAxesDifferBySixtyDegrees) {
  const Rig rig = MakeDefaultRig();
  ASSERT_EQ(rig.size(), 6);
  for (int k = 0; k < 6; ++k) {
    const auto& a = rig.cameras[k].ego_to_camera.rotation;
    const auto& b = rig.cameras[(k + 1) % 6].ego_to_camera.rotation;
    // Optical axis in ego coordinates is the third row of ego->camera.
    const Eigen::Vector3d axis_a = a.row(2).transpose();
    const Eigen::Vector3d axis_b = b.row(2).transpose();
    const double angle = std::atan2(axis_a.cross(axis_b).z(), axis_a.dot(axis_b));
    EXPECT_NEAR(angle, kPi / 3.0, 1e-12);
    EXPECT_NEAR(axis_a.z(), 0.0, 1e-15);
  }
  const Eigen::Vector3d first_axis =
      rig.cameras[0].ego_to_camera.rotation.row(2).transpose();
  EXPECT_NEAR((first_axis - Eigen::Vector3d::UnitX()).norm(), 0.0, 1e-15);
}

TEST(MakeSymmetricRig, MountRotatesWithCamera) {
  const Rig rig = MakeDefaultRig();
  for (int k = 0; k < 6; ++k) {
    const Eigen::Vector3d expected =
        RotationZ(2.0 * kPi * k / 6.0) * Eigen::Vector3d(1.0, 0.0, 1.5);
    EXPECT_NEAR((rig.cameras[k].Center() - expected).norm(), 0.0, 1e-12);
    EXPECT_EQ(rig.cameras[k].intrinsics.fx, 1266.0);
  }
}

TEST(MakeSymmetricRig, RejectsSingleCamera) {
  EXPECT_THROW(MakeSymmetricRig(1, {1266, 1266, 800, 450},
                                Eigen::Vector3d(1, 0, 1.5), {1600, 900}),
               InvalidArgument);
}

TEST(MakeSymmetricRig, RotatedPointMovesToNextCamera) {
  for (int num_cameras : {2, 3, 5, 6, 8}) {
    const Rig rig = MakeSymmetricRig(num_cameras, {900, 900, 800, 450},
                                     Eigen::Vector3d(0.8, 0.0, 1.6),
                                     {1600, 900});
    const Eigen::Matrix3d rot = RotationZ(2.0 * kPi / num_cameras);
    TestRng rng(24 + num_cameras);
    for (int i = 0; i < 200; ++i) {
      const int k = rng.Int(0, num_cameras - 1);
      const Eigen::Vector3d p = PointAtPixel(
          rig.cameras[k], rng.Uniform(1, 1599), rng.Uniform(1, 899),
          rng.Uniform(2, 60));
      const auto before = ProjectToView(p, rig.cameras[k], k);
      const int next = (k + 1) % num_cameras;
      const auto after = ProjectToView(rot * p, rig.cameras[next], next);
      ASSERT_TRUE(before && after);
      EXPECT_NEAR(before->u, after->u, 1e-9);
      EXPECT_NEAR(before->v, after->v, 1e-9);
      EXPECT_NEAR(before->depth, after->depth, 1e-9);
    }
  }
}

TEST(RigidTransform, InverseAndCompose) {
  const RigidTransform a =
      RigidTransform::FromYaw(0.7, Eigen::Vector3d(1.0, -2.0, 0.5));
  const RigidTransform id = a * a.Inverse();
  EXPECT_NEAR((id.rotation - Eigen::Matrix3d::Identity()).norm(), 0.0, 1e-15);
  EXPECT_NEAR(id.translation.norm(), 0.0, 1e-15);
  EXPECT_NO_THROW(a.Validate());
  RigidTransform bad;
  bad.rotation(0, 0) = -1.0;  // reflection
  EXPECT_THROW(bad.Validate(), InvalidArgument);
}

TEST(CameraModel, Validate) {
  CameraModel cam = UnitCamera();
  EXPECT_NO_THROW(cam.Validate());
  cam.intrinsics.fx = 0.0;
  EXPECT_THROW(cam.Validate(), InvalidArgument);
  cam = UnitCamera();
  cam.image_size.width = 0;
  EXPECT_THROW(cam.Validate(), InvalidArgument);
}

TEST(TemporalProject, IdentityPoseMatchesProjection) {
  const Rig rig = MakeDefaultRig();
  TestRng rng(25);
  for (int i = 0; i < 500; ++i) {
    const Eigen::Vector3d p(rng.Uniform(-40, 40), rng.Uniform(-40, 40),
                            rng.Uniform(-2, 3));
    for (int k = 0; k < rig.size(); ++k) {
      const auto a = ProjectToView(p, rig.cameras[k], k);
      const auto b = TemporalProject(p, rig.cameras[k], EgoPose{}, k);
      ASSERT_EQ(a.has_value(), b.has_value());
      if (!a) continue;
      EXPECT_EQ(a->u, b->u);
      EXPECT_EQ(a->v, b->v);
      EXPECT_EQ(a->depth, b->depth);
    }
  }
}

TEST(TemporalProject, EgoTranslation) {
  // Ego moved +5 m along x from t-1 to t: a static object at x = 10 now
  // sat at x = 15 in the previous ego frame.
  EgoPose pose;
  pose.current_to_past.translation = Eigen::Vector3d(5, 0, 0);
  pose.dt = 0.5;
  const Eigen::Vector3d past = pose.current_to_past.Apply({10, 0, 0});
  EXPECT_EQ(past, Eigen::Vector3d(15, 0, 0));

  const Rig rig = MakeDefaultRig();
  const auto a = TemporalProject({10, 0, 0.5}, rig.cameras[0], pose);
  const auto b = ProjectToView(Eigen::Vector3d(15, 0, 0.5), rig.cameras[0]);
  ASSERT_TRUE(a && b);
  EXPECT_DOUBLE_EQ(a->u, b->u);
  EXPECT_DOUBLE_EQ(a->v, b->v);
  EXPECT_DOUBLE_EQ(a->depth, b->depth);
}

TEST(TemporalProject, EgoYawShiftsCameraIndex) {
  // Ego yawed -60 degrees since the previous frame, so current points sit
  // 60 degrees further counter-clockwise in the past frame.
  const Rig rig = MakeDefaultRig();
  EgoPose pose;
  pose.current_to_past = RigidTransform::FromYaw(kPi / 3.0);
  TestRng rng(26);
  for (int i = 0; i < 200; ++i) {
    const int k = rng.Int(0, 5);
    const int prev = (k + 5) % 6;
    const Eigen::Vector3d p = PointAtPixel(
        rig.cameras[prev], rng.Uniform(1, 1599), rng.Uniform(1, 899),
        rng.Uniform(2, 60));
    const auto now = ProjectToView(p, rig.cameras[prev], prev);
    const auto past = TemporalProject(p, rig.cameras[k], pose, k);
    ASSERT_TRUE(now && past);
    EXPECT_NEAR(past->u, now->u, 1e-9);
    EXPECT_NEAR(past->v, now->v, 1e-9);
    EXPECT_NEAR(past->depth, now->depth, 1e-9);
  }
}

}  // namespace
}  // namespace polar3d
