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

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "polar3d/error.h"

namespace polar3d {
namespace {

using nlohmann::json;

json MatrixToJson(const Eigen::Matrix3d& m) {
  json out = json::array();
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) out.push_back(m(r, c));
  }
  return out;
}

json VectorToJson(const Eigen::Vector3d& v) {
  return json::array({v.x(), v.y(), v.z()});
}

json TransformToJson(const RigidTransform& t) {
  return {{"rotation", MatrixToJson(t.rotation)},
          {"translation", VectorToJson(t.translation)}};
}

std::vector<double> NumberArray(const json& j, std::size_t expected,
                                const char* what) {
  if (!j.is_array() || (expected != 0 && j.size() != expected)) {
    throw InvalidArgument(std::string("expected array for ") + what);
  }
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) {
      throw InvalidArgument(std::string("non-numeric entry in ") + what);
    }
    out.push_back(v.get<double>());
  }
  return out;
}

RigidTransform TransformFromJson(const json& j) {
  const auto rot = NumberArray(j.at("rotation"), 9, "rotation");
  const auto tr = NumberArray(j.at("translation"), 3, "translation");
  RigidTransform t;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) t.rotation(r, c) = rot[3 * r + c];
  }
  t.translation = {tr[0], tr[1], tr[2]};
  t.Validate();
  return t;
}

json RigToJson(const Rig& rig) {
  json cams = json::array();
  for (const auto& cam : rig.cameras) {
    const auto& k = cam.intrinsics;
    cams.push_back({{"intrinsics", {k.fx, k.fy, k.cx, k.cy}},
                    {"extrinsics", TransformToJson(cam.ego_to_camera)},
                    {"image_size",
                     {cam.image_size.width, cam.image_size.height}}});
  }
  return cams;
}

Rig RigFromJson(const json& j) {
  if (!j.is_array()) throw InvalidArgument("rig must be an array");
  Rig rig;
  for (const auto& c : j) {
    CameraModel cam;
    const auto k = NumberArray(c.at("intrinsics"), 4, "intrinsics");
    cam.intrinsics = {k[0], k[1], k[2], k[3]};
    cam.ego_to_camera = TransformFromJson(c.at("extrinsics"));
    const auto& size = c.at("image_size");
    if (!size.is_array() || size.size() != 2) {
      throw InvalidArgument("image_size must be [w, h]");
    }
    cam.image_size = {size[0].get<int>(), size[1].get<int>()};
    cam.Validate();
    rig.cameras.push_back(cam);
  }
  return rig;
}

void CheckSchema(const json& root) {
  if (!root.is_object()) throw InvalidArgument("top-level JSON must be object");
  const int version = root.at("schema_version").get<int>();
  if (version != kSceneSchemaVersion) {
    throw InvalidArgument("unsupported schema_version " +
                          std::to_string(version));
  }
}

json Parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed JSON: ") + e.what());
  }
}

// Rethrows nlohmann type/key errors as schema violations.
template <typename Fn>
auto WithSchemaErrors(Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("JSON schema violation: ") + e.what());
  }
}

}  // namespace

std::string SceneToJson(const Scene& scene) {
  json frames = json::array();
  for (const auto& frame : scene.frames) {
    json objects = json::array();
    for (const auto& o : frame.objects) {
      const auto& b = o.box;
      objects.push_back(
          {{"id", o.id},
           {"class", o.class_id},
           {"box", {b.x, b.y, b.z, b.l, b.w, b.h, b.yaw}},
           {"velocity", {o.velocity.vx, o.velocity.vy}}});
    }
    frames.push_back({{"t", frame.t},
                      {"ego_pose", TransformToJson(frame.ego_pose)},
                      {"objects", objects}});
  }
  const json root = {{"schema_version", kSceneSchemaVersion},
                     {"rig", RigToJson(scene.rig)},
                     {"frames", frames}};
  return root.dump(1) + "\n";
}

Scene SceneFromJson(std::string_view text) {
  const json root = Parse(text);
  Scene scene = WithSchemaErrors([&] {
    CheckSchema(root);
    Scene s;
    s.rig = RigFromJson(root.at("rig"));
    for (const auto& f : root.at("frames")) {
      Frame frame;
      frame.t = f.at("t").get<double>();
      frame.ego_pose = TransformFromJson(f.at("ego_pose"));
      for (const auto& o : f.at("objects")) {
        GroundTruthObject obj;
        obj.id = o.at("id").get<int>();
        obj.class_id = o.at("class").get<int>();
        const auto b = NumberArray(o.at("box"), 7, "box");
        obj.box = {b[0], b[1], b[2], b[3], b[4], b[5], b[6]};
        const auto v = NumberArray(o.at("velocity"), 2, "velocity");
        obj.velocity = {v[0], v[1]};
        frame.objects.push_back(obj);
      }
      s.frames.push_back(std::move(frame));
    }
    return s;
  });
  scene.Validate();
  return scene;
}

std::string DetectionsToJson(const DetectionSet& detections) {
  json frames = json::array();
  for (const auto& frame : detections.frames) {
    json dets = json::array();
    for (const auto& d : frame.detections) {
      const auto& b = d.box;
      dets.push_back({{"box",
                       {b.r, b.sin_a, b.cos_a, b.z, b.l, b.w, b.h, b.sin_t,
                        b.cos_t}},
                      {"score", d.score},
                      {"probs", d.class_probs},
                      {"velocity", {d.velocity.v_rad, d.velocity.v_tan}}});
    }
    frames.push_back({{"t", frame.t}, {"detections", dets}});
  }
  const json root = {{"schema_version", kSceneSchemaVersion},
                     {"frames", frames}};
  return root.dump(1) + "\n";
}

DetectionSet DetectionsFromJson(std::string_view text) {
  const json root = Parse(text);
  DetectionSet set = WithSchemaErrors([&] {
    CheckSchema(root);
    DetectionSet s;
    for (const auto& f : root.at("frames")) {
      DetectionFrame frame;
      frame.t = f.at("t").get<double>();
      for (const auto& d : f.at("detections")) {
        Detection det;
        const auto b = NumberArray(d.at("box"), 9, "box");
        det.box = {b[0], b[1], b[2], b[3], b[4], b[5], b[6], b[7], b[8]};
        det.score = d.at("score").get<double>();
        det.class_probs = NumberArray(d.at("probs"), 0, "probs");
        const auto v = NumberArray(d.at("velocity"), 2, "velocity");
        det.velocity = {v[0], v[1]};
        frame.detections.push_back(std::move(det));
      }
      s.frames.push_back(std::move(frame));
    }
    return s;
  });
  set.Validate();
  return set;
}

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("failed reading " + path.string());
  return buffer.str();
}

void WriteTextFile(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("failed writing " + path.string());
}

Scene LoadScene(const std::filesystem::path& path) {
  return SceneFromJson(ReadTextFile(path));
}

void SaveScene(const std::filesystem::path& path, const Scene& scene) {
  WriteTextFile(path, SceneToJson(scene));
}

DetectionSet LoadDetections(const std::filesystem::path& path) {
  return DetectionsFromJson(ReadTextFile(path));
}

void SaveDetections(const std::filesystem::path& path,
                    const DetectionSet& detections) {
  WriteTextFile(path, DetectionsToJson(detections));
}

}  // namespace polar3d
