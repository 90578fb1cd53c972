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


#include "polar3d/scene_io.h"

#include <filesystem>
#include <string>

#include <gtest/gtest.h>

#include "polar3d/error.h"
#include "polar3d/simulator.h"

namespace polar3d {
namespace {

Scene TestScene() {
  SceneConfig config;
  config.num_objects = 6;
  config.num_frames = 4;
  config.ego_trajectory = EgoTrajectory::kArc;
  config.ego_speed = 2.0;
  config.ego_yaw_rate = 0.05;
  config.seed = 17;
  return GenerateScene(config);
}

TEST(SceneJson, RoundTripIsLossless) {
  const Scene scene = TestScene();
  const std::string text = SceneToJson(scene);
  const Scene back = SceneFromJson(text);
  EXPECT_EQ(SceneToJson(back), text);
  ASSERT_EQ(back.frames.size(), scene.frames.size());
  for (std::size_t n = 0; n < scene.frames.size(); ++n) {
    ASSERT_EQ(back.frames[n].objects.size(), scene.frames[n].objects.size());
    for (std::size_t i = 0; i < scene.frames[n].objects.size(); ++i) {
      const auto& a = scene.frames[n].objects[i];
      const auto& b = back.frames[n].objects[i];
      EXPECT_EQ(a.id, b.id);
      EXPECT_EQ(a.class_id, b.class_id);
      EXPECT_EQ(a.box.x, b.box.x);
      EXPECT_EQ(a.box.yaw, b.box.yaw);
      EXPECT_EQ(a.velocity.vy, b.velocity.vy);
    }
    EXPECT_EQ(back.frames[n].ego_pose.rotation,
              scene.frames[n].ego_pose.rotation);
  }
  ASSERT_EQ(back.rig.size(), scene.rig.size());
  EXPECT_EQ(back.rig.cameras[3].ego_to_camera.rotation,
            scene.rig.cameras[3].ego_to_camera.rotation);
  EXPECT_EQ(back.rig.cameras[3].image_size.width, 1600);
}

TEST(DetectionsJson, RoundTripIsLossless) {
  NoiseModel noise;
  noise.radial_std = 0.2;
  noise.score_std = 0.3;
  noise.false_positive_rate = 2.0;
  noise.seed = 4;
  const DetectionSet dets = RenderDetections(TestScene(), noise);
  const std::string text = DetectionsToJson(dets);
  const DetectionSet back = DetectionsFromJson(text);
  EXPECT_EQ(DetectionsToJson(back), text);
  ASSERT_EQ(back.frames.size(), dets.frames.size());
  for (std::size_t n = 0; n < dets.frames.size(); ++n) {
    ASSERT_EQ(back.frames[n].detections.size(),
              dets.frames[n].detections.size());
    for (std::size_t i = 0; i < dets.frames[n].detections.size(); ++i) {
      const auto& a = dets.frames[n].detections[i];
      const auto& b = back.frames[n].detections[i];
      EXPECT_EQ(a.box.r, b.box.r);
      EXPECT_EQ(a.box.cos_t, b.box.cos_t);
      EXPECT_EQ(a.score, b.score);
      EXPECT_EQ(a.class_probs, b.class_probs);
      EXPECT_EQ(a.velocity.v_tan, b.velocity.v_tan);
    }
  }
}

TEST(SceneJson, RejectsMalformedInput) {
  EXPECT_THROW(SceneFromJson("{"), InvalidArgument);
  EXPECT_THROW(SceneFromJson("[]"), InvalidArgument);
  EXPECT_THROW(SceneFromJson(R"({"schema_version": 2, "rig": [],
                                 "frames": []})"),
               InvalidArgument);
  EXPECT_THROW(SceneFromJson(R"({"schema_version": 1, "rig": []})"),
               InvalidArgument);
  const std::string bad_box = R"({"schema_version": 1, "rig": [],
      "frames": [{"t": 0, "ego_pose": {"rotation": [1,0,0,0,1,0,0,0,1],
                  "translation": [0,0,0]},
                  "objects": [{"id": 1, "class": 0, "box": [1, 2, 3],
                               "velocity": [0, 0]}]}]})";
  EXPECT_THROW(SceneFromJson(bad_box), InvalidArgument);
}

TEST(SceneJson, RejectsInvariantViolations) {
  const std::string non_increasing = R"({"schema_version": 1, "rig": [],
      "frames": [
        {"t": 1, "ego_pose": {"rotation": [1,0,0,0,1,0,0,0,1],
         "translation": [0,0,0]}, "objects": []},
        {"t": 1, "ego_pose": {"rotation": [1,0,0,0,1,0,0,0,1],
         "translation": [0,0,0]}, "objects": []}]})";
  EXPECT_THROW(SceneFromJson(non_increasing), InvalidArgument);
  const std::string duplicate_id = R"({"schema_version": 1, "rig": [],
      "frames": [{"t": 0, "ego_pose": {"rotation": [1,0,0,0,1,0,0,0,1],
                  "translation": [0,0,0]},
                  "objects": [
                    {"id": 1, "class": 0, "box": [5,0,0,1,1,1,0],
                     "velocity": [0,0]},
                    {"id": 1, "class": 0, "box": [9,0,0,1,1,1,0],
                     "velocity": [0,0]}]}]})";
  EXPECT_THROW(SceneFromJson(duplicate_id), InvalidArgument);
}

TEST(DetectionsJson, RejectsInvalidDetections) {
  const std::string bad_score = R"({"schema_version": 1, "frames": [
      {"t": 0, "detections": [{"box": [10,0,1,0,1,1,1,0,1], "score": 1.5,
                               "probs": [1], "velocity": [0,0]}]}]})";
  EXPECT_THROW(DetectionsFromJson(bad_score), InvalidArgument);
  const std::string bad_pair = R"({"schema_version": 1, "frames": [
      {"t": 0, "detections": [{"box": [10,0.5,0.5,0,1,1,1,0,1], "score": 0.5,
                               "probs": [1], "velocity": [0,0]}]}]})";
  EXPECT_THROW(DetectionsFromJson(bad_pair), InvalidArgument);
}

TEST(DetectionsJson, IgnoresExtraFields) {
  const std::string text = R"({"schema_version": 1, "summary": {},
      "frames": [{"frame": 0, "t": 0.5, "detections": [
        {"track_id": 3, "box": [10,0,1,0,1,1,1,0,1], "score": 0.5,
         "probs": [0.5], "velocity": [1,2]}]}]})";
  const DetectionSet dets = DetectionsFromJson(text);
  ASSERT_EQ(dets.frames.size(), 1u);
  EXPECT_EQ(dets.frames[0].t, 0.5);
  EXPECT_EQ(dets.frames[0].detections[0].velocity.v_tan, 2.0);
}

TEST(FileIo, SaveAndLoad) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto path = dir / "polar3d_scene_io_test.json";
  const Scene scene = TestScene();
  SaveScene(path, scene);
  EXPECT_EQ(SceneToJson(LoadScene(path)), SceneToJson(scene));
  std::filesystem::remove(path);
}

TEST(FileIo, MissingFileIsIoError) {
  EXPECT_THROW(LoadScene("/nonexistent/dir/scene.json"), IoError);
  EXPECT_THROW(WriteTextFile("/nonexistent/dir/out.json", "x"), IoError);
}

}  // namespace
}  // namespace polar3d
