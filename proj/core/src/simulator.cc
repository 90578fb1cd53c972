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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "polar3d/error.h"

namespace polar3d {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Keeps the labeled class the arg-max of the probability vector.
constexpr double kMinScore = 1e-6;

struct WorldObject {
  int id;
  int class_id;
  Eigen::Vector3d position;  // frame-0 ego coordinates at t = 0
  Eigen::Vector2d velocity;
  double yaw;
  double l, w, h;
};

RigidTransform EgoPoseAt(const SceneConfig& c, double t) {
  switch (c.ego_trajectory) {
    case EgoTrajectory::kStatic:
      return RigidTransform::Identity();
    case EgoTrajectory::kStraight:
      return RigidTransform::FromYaw(0.0, {c.ego_speed * t, 0.0, 0.0});
    case EgoTrajectory::kArc: {
      const double omega = c.ego_yaw_rate;
      if (omega == 0.0) {
        return RigidTransform::FromYaw(0.0, {c.ego_speed * t, 0.0, 0.0});
      }
      const double yaw = omega * t;
      const double radius = c.ego_speed / omega;
      return RigidTransform::FromYaw(
          yaw, {radius * std::sin(yaw), radius * (1.0 - std::cos(yaw)), 0.0});
    }
  }
  return RigidTransform::Identity();
}

double EgoYawAt(const SceneConfig& c, double t) {
  return c.ego_trajectory == EgoTrajectory::kArc ? c.ego_yaw_rate * t : 0.0;
}

void CheckStd(double v, const char* name) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw InvalidArgument(std::string("noise ") + name + " must be >= 0");
  }
}

void CheckProbability(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw InvalidArgument(std::string(name) + " must lie in [0, 1]");
  }
}

// Per-class sigmoid scores: the labeled class carries the detection score,
// every other class zero.
std::vector<double> ClassProbabilities(int num_classes, int class_id,
                                       double score) {
  std::vector<double> probs(num_classes, 0.0);
  probs[class_id] = score;
  return probs;
}

}  // namespace

void SceneConfig::Validate() const {
  if (num_objects < 0) throw InvalidArgument("num_objects must be >= 0");
  if (num_frames < 1) throw InvalidArgument("num_frames must be >= 1");
  if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
  if (!(min_speed >= 0.0) || !(max_speed >= min_speed)) {
    throw InvalidArgument("speed range must satisfy 0 <= min <= max");
  }
  if (!(r_min >= 0.0) || !(r_max > r_min)) {
    throw InvalidArgument("placement radius must satisfy 0 <= r_min < r_max");
  }
  if (num_classes < 1) throw InvalidArgument("num_classes must be >= 1");
  if (!std::isfinite(ego_speed) || !std::isfinite(ego_yaw_rate)) {
    throw InvalidArgument("ego motion must be finite");
  }
  rig.Validate();
}

void NoiseModel::Validate() const {
  CheckStd(radial_std, "radial_std");
  CheckStd(tangential_std, "tangential_std");
  CheckStd(z_std, "z_std");
  CheckStd(size_std, "size_std");
  CheckStd(yaw_std, "yaw_std");
  CheckStd(velocity_std, "velocity_std");
  CheckStd(score_std, "score_std");
  CheckStd(false_positive_rate, "false_positive_rate");
  CheckProbability(drop_probability, "drop_probability");
  CheckProbability(false_positive_max_score, "false_positive_max_score");
  if (!(false_positive_r_max > 0.0)) {
    throw InvalidArgument("false_positive_r_max must be positive");
  }
  if (num_classes < 1) throw InvalidArgument("num_classes must be >= 1");
}

Scene GenerateScene(const SceneConfig& config) {
  config.Validate();
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };

  std::vector<WorldObject> objects;
  objects.reserve(config.num_objects);
  for (int i = 0; i < config.num_objects; ++i) {
    WorldObject o;
    o.id = i + 1;
    double r = uniform(config.r_min, config.r_max);
    if (r <= config.r_min) r = std::nextafter(config.r_min, config.r_max);
    const double azimuth = uniform(-std::numbers::pi, std::numbers::pi);
    const double speed = uniform(config.min_speed, config.max_speed);
    const double heading = uniform(-std::numbers::pi, std::numbers::pi);
    o.class_id = static_cast<int>(unit(rng) * config.num_classes);
    o.class_id = std::min(o.class_id, config.num_classes - 1);
    o.l = uniform(0.5, 5.0);
    o.w = uniform(0.5, 2.5);
    o.h = uniform(1.0, 3.0);
    o.position = {r * std::cos(azimuth), r * std::sin(azimuth), 0.5 * o.h};
    o.velocity = {speed * std::cos(heading), speed * std::sin(heading)};
    o.yaw = heading;
    objects.push_back(o);
  }

  Scene scene;
  scene.rig = config.rig;
  scene.frames.reserve(config.num_frames);
  for (int n = 0; n < config.num_frames; ++n) {
    Frame frame;
    frame.t = n * config.dt;
    frame.ego_pose = EgoPoseAt(config, frame.t);
    const RigidTransform world_to_ego = frame.ego_pose.Inverse();
    const double ego_yaw = EgoYawAt(config, frame.t);
    for (const auto& o : objects) {
      const Eigen::Vector3d world(o.position.x() + o.velocity.x() * frame.t,
                                  o.position.y() + o.velocity.y() * frame.t,
                                  o.position.z());
      const Eigen::Vector3d p = world_to_ego.Apply(world);
      const double r = std::hypot(p.x(), p.y());
      if (r == 0.0) continue;
      if (config.clip_to_range && r > config.r_max) continue;
      const Eigen::Vector3d v =
          world_to_ego.rotation * Eigen::Vector3d(o.velocity.x(),
                                                  o.velocity.y(), 0.0);
      GroundTruthObject gt;
      gt.id = o.id;
      gt.class_id = o.class_id;
      gt.box = {p.x(), p.y(), p.z(), o.l, o.w, o.h, WrapAngle(o.yaw - ego_yaw)};
      gt.velocity = {v.x(), v.y()};
      frame.objects.push_back(gt);
    }
    scene.frames.push_back(std::move(frame));
  }
  return scene;
}

Scene RotateScene(const Scene& scene, double phi) {
  const Eigen::Matrix3d rz = RotationZ(phi);
  const RigidTransform rot{rz, Eigen::Vector3d::Zero()};
  const RigidTransform rot_inv = rot.Inverse();
  Scene out;
  out.rig = scene.rig;
  out.frames.reserve(scene.frames.size());
  for (const auto& frame : scene.frames) {
    Frame f;
    f.t = frame.t;
    f.ego_pose = rot * frame.ego_pose * rot_inv;
    f.objects.reserve(frame.objects.size());
    for (const auto& obj : frame.objects) {
      GroundTruthObject o = obj;
      const Eigen::Vector3d p = rz * Eigen::Vector3d(obj.box.x, obj.box.y,
                                                     obj.box.z);
      const Eigen::Vector3d v =
          rz * Eigen::Vector3d(obj.velocity.vx, obj.velocity.vy, 0.0);
      o.box.x = p.x();
      o.box.y = p.y();
      o.box.yaw = WrapAngle(obj.box.yaw + phi);
      o.velocity = {v.x(), v.y()};
      f.objects.push_back(o);
    }
    out.frames.push_back(std::move(f));
  }
  return out;
}

DetectionSet RenderDetections(const Scene& scene, const NoiseModel& noise) {
  noise.Validate();
  std::mt19937_64 rng(noise.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto gauss = [&](double std_dev) {
    return std_dev > 0.0 ? std_dev * normal(rng) : 0.0;
  };

  DetectionSet out;
  out.frames.reserve(scene.frames.size());
  for (const auto& frame : scene.frames) {
    DetectionFrame df;
    df.t = frame.t;
    for (const auto& obj : frame.objects) {
      if (obj.class_id < 0 || obj.class_id >= noise.num_classes) {
        throw InvalidArgument("object class outside the noise model classes");
      }
      const bool dropped = unit(rng) < noise.drop_probability;
      if (dropped) continue;

      PolarBox box = ObjectPolarBox(obj);
      PolarVelocity vel = ObjectPolarVelocity(obj);
      if (noise.space == NoiseSpace::kPolar) {
        box.r = std::abs(box.r + gauss(noise.radial_std));
        const double da = gauss(noise.tangential_std);
        if (da != 0.0) {
          const double s = box.sin_a * std::cos(da) + box.cos_a * std::sin(da);
          const double c = box.cos_a * std::cos(da) - box.sin_a * std::sin(da);
          box.sin_a = s;
          box.cos_a = c;
        }
        vel.v_rad += gauss(noise.velocity_std);
        vel.v_tan += gauss(noise.velocity_std);
      } else {
        CartesianBox cb = obj.box;
        cb.x += gauss(noise.radial_std);
        cb.y += gauss(noise.radial_std);
        CartesianVelocity cv = obj.velocity;
        cv.vx += gauss(noise.velocity_std);
        cv.vy += gauss(noise.velocity_std);
        const PolarBox moved = CartesianToPolar(cb);
        box.r = moved.r;
        box.sin_a = moved.sin_a;
        box.cos_a = moved.cos_a;
        vel = VelocityCartesianToPolar(cv, box.sin_a, box.cos_a);
      }
      box.z += gauss(noise.z_std);
      box.l *= std::max(1.0 + gauss(noise.size_std), 0.05);
      box.w *= std::max(1.0 + gauss(noise.size_std), 0.05);
      box.h *= std::max(1.0 + gauss(noise.size_std), 0.05);
      const double dyaw = gauss(noise.yaw_std);
      if (dyaw != 0.0) {
        const double yaw = YawOf(box) + dyaw;
        box.sin_t = std::sin(yaw);
        box.cos_t = std::cos(yaw);
      }

      Detection det;
      det.box = box;
      det.velocity = vel;
      det.score =
          std::clamp(1.0 - std::abs(gauss(noise.score_std)), kMinScore, 1.0);
      det.class_probs =
          ClassProbabilities(noise.num_classes, obj.class_id, det.score);
      df.detections.push_back(std::move(det));
    }

    if (noise.false_positive_rate > 0.0) {
      std::poisson_distribution<int> count(noise.false_positive_rate);
      const int num_fp = count(rng);
      for (int i = 0; i < num_fp; ++i) {
        const double r =
            std::max(noise.false_positive_r_max * std::sqrt(unit(rng)), 1e-3);
        const double a = kTwoPi * unit(rng);
        const double yaw = kTwoPi * unit(rng);
        const double speed = 5.0 * unit(rng);
        const double heading = kTwoPi * unit(rng);
        const int cls = std::min(static_cast<int>(unit(rng) * noise.num_classes),
                                 noise.num_classes - 1);
        Detection det;
        det.box = {r, std::sin(a), std::cos(a), 0.5 + 1.5 * unit(rng),
                   0.5 + 4.5 * unit(rng), 0.5 + 2.0 * unit(rng),
                   1.0 + 2.0 * unit(rng), std::sin(yaw), std::cos(yaw)};
        det.velocity = VelocityCartesianToPolar(
            {speed * std::cos(heading), speed * std::sin(heading)},
            det.box.sin_a, det.box.cos_a);
        det.score =
            std::max(noise.false_positive_max_score * unit(rng), kMinScore);
        det.class_probs = ClassProbabilities(noise.num_classes, cls, det.score);
        df.detections.push_back(std::move(det));
      }
    }
    out.frames.push_back(std::move(df));
  }
  return out;
}

}  // namespace polar3d
