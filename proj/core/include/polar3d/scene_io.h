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

#ifndef POLAR3D_SCENE_IO_H_
#define POLAR3D_SCENE_IO_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "polar3d/scene.h"

namespace polar3d {

// Scene JSON:
// {schema_version, rig: [{intrinsics: [fx, fy, cx, cy],
//                         extrinsics: {rotation: [9 row-major],
//                                      translation: [3]},
//                         image_size: [w, h]}],
//  frames: [{t, ego_pose: {rotation, translation},
//            objects: [{id, class, box: [x, y, z, l, w, h, yaw],
//                       velocity: [vx, vy]}]}]}
//
// Detections JSON:
// {schema_version, frames: [{t, detections: [{box: [r, sin_a, cos_a, z, l,
//   w, h, sin_t, cos_t], score, probs: [...], velocity: [v_rad, v_tan]}]}]}
//
// Parse failures and schema violations throw InvalidArgument.

std::string SceneToJson(const Scene& scene);
Scene SceneFromJson(std::string_view text);

std::string DetectionsToJson(const DetectionSet& detections);
DetectionSet DetectionsFromJson(std::string_view text);

// File helpers; I/O failures throw IoError.
std::string ReadTextFile(const std::filesystem::path& path);
void WriteTextFile(const std::filesystem::path& path, std::string_view text);

Scene LoadScene(const std::filesystem::path& path);
void SaveScene(const std::filesystem::path& path, const Scene& scene);
DetectionSet LoadDetections(const std::filesystem::path& path);
void SaveDetections(const std::filesystem::path& path,
                    const DetectionSet& detections);

}  // namespace polar3d

#endif  // POLAR3D_SCENE_IO_H_
