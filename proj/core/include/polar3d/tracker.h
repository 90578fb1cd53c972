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

#ifndef POLAR3D_TRACKER_H_
#define POLAR3D_TRACKER_H_

#include <span>
#include <vector>

#include <Eigen/Core>

#include "polar3d/scene.h"

namespace polar3d {

enum class TrackMatching { kGreedy, kHungarian };

struct TrackerConfig {
  double distance_threshold = 2.0;  // meters, inclusive
  int max_misses = 2;               // retire once misses exceed this
  TrackMatching matching = TrackMatching::kGreedy;

  void Validate() const;
};

struct Track {
  int id = 0;
  PolarBox box;
  // Ego-plane center at the last processed frame; coasted with the
  // velocity while the track is unmatched.
  Eigen::Vector2d center = Eigen::Vector2d::Zero();
  PolarVelocity velocity;
  int class_id = 0;
  int age = 1;     // frames since creation, counting the creation frame
  int misses = 0;  // consecutive unmatched frames
  double score = 0.0;
};

struct TrackerState {
  std::vector<Track> tracks;
  int next_id = 1;
  TrackerConfig config;
};

// Detection center moved back by dt along its own velocity.
Eigen::Vector2d BackProject(const Detection& det, double dt);

// Cartesian velocity of a detection from its polar components.
Eigen::Vector2d CartesianVelocityOf(const Detection& det);

struct TrackMatch {
  int track = 0;      // index into state.tracks
  int detection = 0;  // index into the detection list
  double distance = 0.0;
};

struct TrackMatchResult {
  std::vector<TrackMatch> matches;
  std::vector<int> unmatched_detections;
  std::vector<int> unmatched_tracks;
};

// Same-class pairs within the distance threshold between back-projected
// detection centers and track centers. Greedy mode consumes pairs in
// ascending distance (ties: lower detection index, then lower track id).
// Throws InvalidArgument for dt <= 0.
TrackMatchResult MatchTracks(const TrackerState& state,
                             std::span<const Detection> dets, double dt);

struct StepResult {
  std::vector<int> track_ids;  // one per input detection
  int tracks_created = 0;
  int tracks_retired = 0;
};

// Advances the tracker one frame. Matched tracks take the detection's
// box, velocity and score; unmatched detections start tracks; unmatched
// tracks coast and retire after more than max_misses consecutive misses.
StepResult Step(TrackerState* state, std::span<const Detection> dets,
                double dt);

struct TrackedObject {
  int track_id = 0;
  Eigen::Vector2d center = Eigen::Vector2d::Zero();
};

// Per frame, the tracker output to compare against ground truth.
using TrackHistory = std::vector<std::vector<TrackedObject>>;

// Runs Step over every frame (dt from consecutive timestamps) and returns
// the per-frame track ids alongside the centers they were reported at.
struct TrackingRun {
  TrackHistory history;
  std::vector<StepResult> steps;
  int tracks_created = 0;
};
TrackingRun RunTracker(const DetectionSet& detections,
                       const TrackerConfig& config);

// Associates tracked objects with GT objects per frame (optimal assignment
// on planar center distance, gated at `match_threshold`) and counts the
// frames in which a GT object's track id differs from the one it carried at
// its previous matched frame.
int CountIdSwitches(const TrackHistory& history, const Scene& scene,
                    double match_threshold = 2.0);

}  // namespace polar3d

#endif  // POLAR3D_TRACKER_H_
