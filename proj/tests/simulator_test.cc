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


#include "polar3d/simulator.h"

#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.h"
#include "polar3d/error.h"
#include "polar3d/scene_io.h"

namespace polar3d {
namespace {

constexpr double kPi = std::numbers::pi;

const GroundTruthObject* FindObject(const Frame& frame, int id) {
  for (const auto& o : frame.objects) {
    if (o.id == id) return &o;
  }
  return nullptr;
}

TEST(GenerateScene, DeterministicPerSeed) {
  SceneConfig config;
  config.seed = 42;
  const std::string a = SceneToJson(GenerateScene(config));
  const std::string b = SceneToJson(GenerateScene(config));
  EXPECT_EQ(a, b);
  config.seed = 43;
  EXPECT_NE(a, SceneToJson(GenerateScene(config)));
}

TEST(GenerateScene, ZeroObjects) {
  SceneConfig config;
  config.num_objects = 0;
  config.num_frames = 4;
  const Scene scene = GenerateScene(config);
  ASSERT_EQ(scene.frames.size(), 4u);
  for (const auto& f : scene.frames) EXPECT_TRUE(f.objects.empty());
  EXPECT_NO_THROW(scene.Validate());
}

TEST(GenerateScene, ConstantVelocityKinematics) {
  SceneConfig config;
  config.num_objects = 8;
  config.num_frames = 20;
  config.clip_to_range = false;
  const Scene scene = GenerateScene(config);
  for (const auto& first : scene.frames[0].objects) {
    for (std::size_t n = 1; n < scene.frames.size(); ++n) {
      const GroundTruthObject* o = FindObject(scene.frames[n], first.id);
      ASSERT_NE(o, nullptr);
      const double t = n * config.dt;
      EXPECT_NEAR(o->box.x, first.box.x + t * first.velocity.vx, 1e-12);
      EXPECT_NEAR(o->box.y, first.box.y + t * first.velocity.vy, 1e-12);
      EXPECT_EQ(o->box.z, first.box.z);
      EXPECT_EQ(o->velocity.vx, first.velocity.vx);
    }
  }
}

TEST(GenerateScene, PlacementAndSpeedBounds) {
  SceneConfig config;
  config.num_objects = 200;
  config.num_frames = 1;
  config.min_speed = 1.0;
  config.max_speed = 3.0;
  const Scene scene = GenerateScene(config);
  ASSERT_EQ(scene.frames[0].objects.size(), 200u);
  for (const auto& o : scene.frames[0].objects) {
    const double r = std::hypot(o.box.x, o.box.y);
    EXPECT_GT(r, 2.0);
    EXPECT_LT(r, 50.0);
    const double speed = std::hypot(o.velocity.vx, o.velocity.vy);
    EXPECT_GE(speed, 1.0 - 1e-12);
    EXPECT_LE(speed, 3.0 + 1e-12);
    EXPECT_GE(o.class_id, 0);
    EXPECT_LT(o.class_id, 10);
    EXPECT_GT(o.box.l, 0.0);
  }
}

TEST(GenerateScene, ClippedObjectsStayInRange) {
  SceneConfig config;
  config.num_objects = 50;
  config.num_frames = 40;
  config.max_speed = 15.0;
  const Scene scene = GenerateScene(config);
  int total = 0;
  for (const auto& f : scene.frames) {
    for (const auto& o : f.objects) {
      EXPECT_LE(std::hypot(o.box.x, o.box.y), config.r_max);
      ++total;
    }
  }
  EXPECT_LT(total, 50 * 40);  // some objects drive out of range
  EXPECT_NO_THROW(scene.Validate());
}

TEST(GenerateScene, StraightEgoSeesStaticObjectApproach) {
  SceneConfig config;
  config.num_objects = 5;
  config.num_frames = 5;
  config.max_speed = 0.0;
  config.ego_trajectory = EgoTrajectory::kStraight;
  config.ego_speed = 4.0;
  config.clip_to_range = false;
  const Scene scene = GenerateScene(config);
  for (const auto& first : scene.frames[0].objects) {
    const GroundTruthObject* last = FindObject(scene.frames[4], first.id);
    ASSERT_NE(last, nullptr);
    EXPECT_NEAR(last->box.x, first.box.x - 4.0 * 4 * config.dt, 1e-12);
    EXPECT_NEAR(last->box.y, first.box.y, 1e-12);
  }
  EXPECT_NEAR(scene.frames[4].ego_pose.translation.x(), 8.0, 1e-12);
}

TEST(GenerateScene, ArcEgoRotatesYaw) {
  SceneConfig config;
  config.num_objects = 3;
  config.num_frames = 3;
  config.max_speed = 0.0;
  config.ego_trajectory = EgoTrajectory::kArc;
  config.ego_speed = 5.0;
  config.ego_yaw_rate = 0.2;
  config.clip_to_range = false;
  const Scene scene = GenerateScene(config);
  const auto& pose = scene.frames[2].ego_pose;
  EXPECT_NEAR(std::atan2(pose.rotation(1, 0), pose.rotation(0, 0)), 0.2, 1e-12);
  for (const auto& first : scene.frames[0].objects) {
    const GroundTruthObject* o = FindObject(scene.frames[2], first.id);
    ASSERT_NE(o, nullptr);
    // Static objects: the ego pose maps their current position back.
    const Eigen::Vector3d world = pose.Apply({o->box.x, o->box.y, o->box.z});
    EXPECT_NEAR(world.x(), first.box.x, 1e-12);
    EXPECT_NEAR(world.y(), first.box.y, 1e-12);
    EXPECT_NEAR(WrapAngle(o->box.yaw + 0.2 - first.box.yaw), 0.0, 1e-12);
  }
}

TEST(GenerateScene, RejectsInvalidConfig) {
  SceneConfig config;
  config.num_objects = -1;
  EXPECT_THROW(GenerateScene(config), InvalidArgument);
  config = SceneConfig{};
  config.dt = 0.0;
  EXPECT_THROW(GenerateScene(config), InvalidArgument);
  config = SceneConfig{};
  config.max_speed = -1.0;
  EXPECT_THROW(GenerateScene(config), InvalidArgument);
  config = SceneConfig{};
  config.r_min = 60.0;
  EXPECT_THROW(GenerateScene(config), InvalidArgument);
}

Scene SmallScene() {
  SceneConfig config;
  config.num_objects = 12;
  config.num_frames = 6;
  config.ego_trajectory = EgoTrajectory::kArc;
  config.ego_speed = 3.0;
  config.ego_yaw_rate = 0.1;
  return GenerateScene(config);
}

TEST(RotateScene, ZeroIsIdentity) {
  const Scene scene = SmallScene();
  const Scene same = RotateScene(scene, 0.0);
  ASSERT_EQ(same.frames.size(), scene.frames.size());
  for (std::size_t n = 0; n < scene.frames.size(); ++n) {
    const auto& a = scene.frames[n];
    const auto& b = same.frames[n];
    // Compared by value: a rotation by zero may flip the sign of a zero.
    EXPECT_TRUE(a.ego_pose.rotation == b.ego_pose.rotation);
    EXPECT_TRUE(a.ego_pose.translation == b.ego_pose.translation);
    ASSERT_EQ(a.objects.size(), b.objects.size());
    for (std::size_t i = 0; i < a.objects.size(); ++i) {
      const auto& p = a.objects[i];
      const auto& q = b.objects[i];
      EXPECT_EQ(p.id, q.id);
      EXPECT_EQ(p.class_id, q.class_id);
      EXPECT_EQ(p.box.x, q.box.x);
      EXPECT_EQ(p.box.y, q.box.y);
      EXPECT_EQ(p.box.z, q.box.z);
      EXPECT_EQ(p.box.yaw, q.box.yaw);
      EXPECT_EQ(p.velocity.vx, q.velocity.vx);
      EXPECT_EQ(p.velocity.vy, q.velocity.vy);
    }
  }
}

TEST(RotateScene, FullTurnIsIdentity) {
  const Scene scene = SmallScene();
  const Scene turned = RotateScene(scene, 2.0 * kPi);
  for (std::size_t n = 0; n < scene.frames.size(); ++n) {
    const auto& a = scene.frames[n];
    const auto& b = turned.frames[n];
    ASSERT_EQ(a.objects.size(), b.objects.size());
    for (std::size_t i = 0; i < a.objects.size(); ++i) {
      EXPECT_NEAR(a.objects[i].box.x, b.objects[i].box.x, 1e-12);
      EXPECT_NEAR(a.objects[i].box.y, b.objects[i].box.y, 1e-12);
      EXPECT_NEAR(WrapAngle(a.objects[i].box.yaw - b.objects[i].box.yaw), 0.0,
                  1e-12);
      EXPECT_NEAR(a.objects[i].velocity.vx, b.objects[i].velocity.vx, 1e-12);
    }
    EXPECT_NEAR((a.ego_pose.rotation - b.ego_pose.rotation).norm(), 0.0,
                1e-12);
    EXPECT_NEAR((a.ego_pose.translation - b.ego_pose.translation).norm(), 0.0,
                1e-12);
  }
}

TEST(RotateScene, PreservesRadialQuantities) {
  const Scene scene = SmallScene();
  for (double phi : {0.3, -1.7, kPi / 3.0}) {
    const Scene turned = RotateScene(scene, phi);
    for (std::size_t n = 0; n < scene.frames.size(); ++n) {
      for (std::size_t i = 0; i < scene.frames[n].objects.size(); ++i) {
        const auto& a = scene.frames[n].objects[i];
        const auto& b = turned.frames[n].objects[i];
        const PolarBox pa = ObjectPolarBox(a);
        const PolarBox pb = ObjectPolarBox(b);
        EXPECT_NEAR(pa.r, pb.r, 1e-12);
        EXPECT_EQ(pa.z, pb.z);
        EXPECT_NEAR(std::hypot(a.velocity.vx, a.velocity.vy),
                    std::hypot(b.velocity.vx, b.velocity.vy), 1e-12);
        const PolarVelocity va = ObjectPolarVelocity(a);
        const PolarVelocity vb = ObjectPolarVelocity(b);
        EXPECT_NEAR(va.v_rad, vb.v_rad, 1e-12);
        EXPECT_NEAR(va.v_tan, vb.v_tan, 1e-12);
      }
    }
  }
}

TEST(RotateScene, ProjectionsMoveToAdjacentCamera) {
  SceneConfig config;
  config.num_objects = 40;
  config.num_frames = 1;
  const Scene scene = GenerateScene(config);
  const Scene turned = RotateScene(scene, kPi / 3.0);
  const Rig& rig = scene.rig;
  int visible = 0;
  for (std::size_t i = 0; i < scene.frames[0].objects.size(); ++i) {
    const PolarBox a = ObjectPolarBox(scene.frames[0].objects[i]);
    const PolarBox b = ObjectPolarBox(turned.frames[0].objects[i]);
    for (int k = 0; k < 6; ++k) {
      const auto before = ProjectToView(a, rig.cameras[k], k);
      const auto after = ProjectToView(b, rig.cameras[(k + 1) % 6]);
      ASSERT_EQ(before.has_value(), after.has_value());
      if (!before) continue;
      ++visible;
      EXPECT_NEAR(before->u, after->u, 1e-9);
      EXPECT_NEAR(before->v, after->v, 1e-9);
      EXPECT_NEAR(before->depth, after->depth, 1e-9);
    }
  }
  EXPECT_GT(visible, 10);
}

TEST(RenderDetections, ZeroNoiseReproducesGroundTruth) {
  const Scene scene = SmallScene();
  const DetectionSet dets = RenderDetections(scene, NoiseModel{});
  ASSERT_EQ(dets.frames.size(), scene.frames.size());
  for (std::size_t n = 0; n < scene.frames.size(); ++n) {
    EXPECT_EQ(dets.frames[n].t, scene.frames[n].t);
    const auto& objects = scene.frames[n].objects;
    ASSERT_EQ(dets.frames[n].detections.size(), objects.size());
    for (std::size_t i = 0; i < objects.size(); ++i) {
      const Detection& d = dets.frames[n].detections[i];
      const PolarBox g = ObjectPolarBox(objects[i]);
      const PolarVelocity v = ObjectPolarVelocity(objects[i]);
      EXPECT_EQ(d.box.r, g.r);
      EXPECT_EQ(d.box.sin_a, g.sin_a);
      EXPECT_EQ(d.box.cos_a, g.cos_a);
      EXPECT_EQ(d.box.z, g.z);
      EXPECT_EQ(d.box.l, g.l);
      EXPECT_EQ(d.box.sin_t, g.sin_t);
      EXPECT_EQ(d.velocity.v_rad, v.v_rad);
      EXPECT_EQ(d.velocity.v_tan, v.v_tan);
      EXPECT_EQ(d.score, 1.0);
      EXPECT_EQ(d.ClassId(), objects[i].class_id);
    }
  }
}

TEST(RenderDetections, DropEverything) {
  const Scene scene = SmallScene();
  NoiseModel noise;
  noise.drop_probability = 1.0;
  for (const auto& f : RenderDetections(scene, noise).frames) {
    EXPECT_TRUE(f.detections.empty());
  }
  noise.false_positive_rate = 3.0;
  int fps = 0;
  for (const auto& f : RenderDetections(scene, noise).frames) {
    for (const auto& d : f.detections) {
      EXPECT_LE(d.score, noise.false_positive_max_score);
      EXPECT_LE(d.box.r, noise.false_positive_r_max);
      ++fps;
    }
  }
  EXPECT_GT(fps, 0);
}

TEST(RenderDetections, RadialNoiseStatistics) {
  SceneConfig config;
  config.num_objects = 500;
  config.num_frames = 20;
  config.r_min = 10.0;
  config.max_speed = 0.0;
  const Scene scene = GenerateScene(config);
  NoiseModel noise;
  noise.radial_std = 0.5;
  noise.seed = 3;
  const DetectionSet dets = RenderDetections(scene, noise);
  double sum = 0.0;
  double sum_sq = 0.0;
  int count = 0;
  for (std::size_t n = 0; n < scene.frames.size(); ++n) {
    const auto& objects = scene.frames[n].objects;
    for (std::size_t i = 0; i < objects.size(); ++i) {
      const double e =
          dets.frames[n].detections[i].box.r - ObjectPolarBox(objects[i]).r;
      sum += e;
      sum_sq += e * e;
      ++count;
    }
  }
  ASSERT_GE(count, 10000);
  const double mean = sum / count;
  const double stddev = std::sqrt(sum_sq / count - mean * mean);
  EXPECT_NEAR(stddev, 0.5, 0.025);
  EXPECT_NEAR(mean, 0.0, 0.02);
}

TEST(RenderDetections, DeterministicAndValid) {
  const Scene scene = SmallScene();
  NoiseModel noise;
  noise.radial_std = 0.3;
  noise.tangential_std = 0.01;
  noise.size_std = 0.1;
  noise.yaw_std = 0.1;
  noise.velocity_std = 0.5;
  noise.score_std = 0.2;
  noise.drop_probability = 0.2;
  noise.false_positive_rate = 1.5;
  noise.seed = 9;
  const DetectionSet a = RenderDetections(scene, noise);
  EXPECT_EQ(DetectionsToJson(a), DetectionsToJson(RenderDetections(scene, noise)));
  EXPECT_NO_THROW(a.Validate());
  noise.space = NoiseSpace::kCartesian;
  EXPECT_NO_THROW(RenderDetections(scene, noise).Validate());
}

TEST(RenderDetections, RejectsInvalidNoise) {
  NoiseModel noise;
  noise.radial_std = -1.0;
  EXPECT_THROW(RenderDetections(Scene{}, noise), InvalidArgument);
  noise = NoiseModel{};
  noise.drop_probability = 1.5;
  EXPECT_THROW(RenderDetections(Scene{}, noise), InvalidArgument);
}

}  // namespace
}  // namespace polar3d
