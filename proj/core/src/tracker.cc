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

#include "polar3d/tracker.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "polar3d/assignment.h"
#include "polar3d/error.h"

namespace polar3d {
namespace {

Eigen::Vector2d CenterOf(const Detection& det) {
  return {det.box.r * det.box.cos_a, det.box.r * det.box.sin_a};
}

struct Candidate {
  double distance;
  int detection;
  int track_id;
  int track;
};

}  // namespace

void TrackerConfig::Validate() const {
  if (!(distance_threshold > 0.0) || !std::isfinite(distance_threshold)) {
    throw InvalidArgument("distance_threshold must be positive");
  }
  if (max_misses < 0) throw InvalidArgument("max_misses must be >= 0");
}

Eigen::Vector2d CartesianVelocityOf(const Detection& det) {
  const CartesianVelocity v =
      VelocityPolarToCartesian(det.velocity, det.box.sin_a, det.box.cos_a);
  return {v.vx, v.vy};
}

Eigen::Vector2d BackProject(const Detection& det, double dt) {
  if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
  return CenterOf(det) - dt * CartesianVelocityOf(det);
}

TrackMatchResult MatchTracks(const TrackerState& state,
                             std::span<const Detection> dets, double dt) {
  state.config.Validate();
  if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
  const int num_tracks = static_cast<int>(state.tracks.size());
  const int num_dets = static_cast<int>(dets.size());
  const double threshold = state.config.distance_threshold;

  std::vector<Eigen::Vector2d> back(num_dets);
  std::vector<int> det_class(num_dets);
  for (int d = 0; d < num_dets; ++d) {
    back[d] = BackProject(dets[d], dt);
    det_class[d] = dets[d].ClassId();
  }

  std::vector<Candidate> candidates;
  for (int t = 0; t < num_tracks; ++t) {
    const Track& track = state.tracks[t];
    for (int d = 0; d < num_dets; ++d) {
      if (det_class[d] != track.class_id) continue;
      const double dist = (back[d] - track.center).norm();
      if (dist <= threshold) candidates.push_back({dist, d, track.id, t});
    }
  }

  TrackMatchResult result;
  std::vector<char> det_used(num_dets, 0), track_used(num_tracks, 0);
  if (state.config.matching == TrackMatching::kGreedy) {
    std::sort(candidates.begin(), candidates.end(),
              [](const Candidate& a, const Candidate& b) {
                return std::tie(a.distance, a.detection, a.track_id) <
                       std::tie(b.distance, b.detection, b.track_id);
              });
    for (const auto& c : candidates) {
      if (det_used[c.detection] || track_used[c.track]) continue;
      det_used[c.detection] = 1;
      track_used[c.track] = 1;
      result.matches.push_back({c.track, c.detection, c.distance});
    }
  } else if (!candidates.empty()) {
    // Gated entries get a cost no admissible pairing can reach.
    const double blocked = threshold * (std::min(num_tracks, num_dets) + 1) + 1;
    CostMatrix costs = CostMatrix::Constant(num_tracks, num_dets, blocked);
    for (const auto& c : candidates) costs(c.track, c.detection) = c.distance;
    for (const auto& m : Hungarian(costs)) {
      if (costs(m.gt, m.pred) > threshold) continue;
      det_used[m.pred] = 1;
      track_used[m.gt] = 1;
      result.matches.push_back({m.gt, m.pred, costs(m.gt, m.pred)});
    }
    std::sort(result.matches.begin(), result.matches.end(),
              [](const TrackMatch& a, const TrackMatch& b) {
                return std::tie(a.distance, a.detection) <
                       std::tie(b.distance, b.detection);
              });
  }
  for (int d = 0; d < num_dets; ++d) {
    if (!det_used[d]) result.unmatched_detections.push_back(d);
  }
  for (int t = 0; t < num_tracks; ++t) {
    if (!track_used[t]) result.unmatched_tracks.push_back(t);
  }
  return result;
}

StepResult Step(TrackerState* state, std::span<const Detection> dets,
                double dt) {
  const TrackMatchResult match = MatchTracks(*state, dets, dt);
  StepResult out;
  out.track_ids.assign(dets.size(), 0);

  for (const auto& m : match.matches) {
    Track& track = state->tracks[m.track];
    const Detection& det = dets[m.detection];
    track.box = det.box;
    track.center = CenterOf(det);
    track.velocity = det.velocity;
    track.score = det.score;
    track.misses = 0;
    ++track.age;
    out.track_ids[m.detection] = track.id;
  }
  for (int t : match.unmatched_tracks) {
    Track& track = state->tracks[t];
    ++track.misses;
    ++track.age;
    const CartesianVelocity v = VelocityPolarToCartesian(
        track.velocity, track.box.sin_a, track.box.cos_a);
    track.center += dt * Eigen::Vector2d(v.vx, v.vy);
  }

  const auto retired = std::remove_if(
      state->tracks.begin(), state->tracks.end(), [&](const Track& t) {
        return t.misses > state->config.max_misses;
      });
  out.tracks_retired = static_cast<int>(state->tracks.end() - retired);
  state->tracks.erase(retired, state->tracks.end());

  for (int d : match.unmatched_detections) {
    const Detection& det = dets[d];
    Track track;
    track.id = state->next_id++;
    track.box = det.box;
    track.center = CenterOf(det);
    track.velocity = det.velocity;
    track.class_id = det.ClassId();
    track.score = det.score;
    state->tracks.push_back(track);
    out.track_ids[d] = track.id;
    ++out.tracks_created;
  }
  return out;
}

TrackingRun RunTracker(const DetectionSet& detections,
                       const TrackerConfig& config) {
  config.Validate();
  TrackerState state;
  state.config = config;
  TrackingRun run;
  const auto& frames = detections.frames;
  for (std::size_t f = 0; f < frames.size(); ++f) {
    double dt = 1.0;
    if (f > 0) {
      dt = frames[f].t - frames[f - 1].t;
    } else if (frames.size() > 1) {
      dt = frames[1].t - frames[0].t;
    }
    if (!(dt > 0.0)) {
      throw InvalidArgument("detection frame timestamps must increase");
    }
    StepResult step = Step(&state, frames[f].detections, dt);
    std::vector<TrackedObject> tracked;
    tracked.reserve(step.track_ids.size());
    for (std::size_t d = 0; d < step.track_ids.size(); ++d) {
      tracked.push_back({step.track_ids[d], CenterOf(frames[f].detections[d])});
    }
    run.tracks_created += step.tracks_created;
    run.history.push_back(std::move(tracked));
    run.steps.push_back(std::move(step));
  }
  return run;
}

int CountIdSwitches(const TrackHistory& history, const Scene& scene,
                    double match_threshold) {
  if (history.size() != scene.frames.size()) {
    throw InvalidArgument("track history and scene differ in frame count");
  }
  if (!(match_threshold > 0.0)) {
    throw InvalidArgument("match_threshold must be positive");
  }
  std::map<int, int> last_track;
  int switches = 0;
  for (std::size_t f = 0; f < history.size(); ++f) {
    const auto& gts = scene.frames[f].objects;
    const auto& tracked = history[f];
    if (gts.empty() || tracked.empty()) continue;
    CostMatrix costs(static_cast<Eigen::Index>(gts.size()),
                     static_cast<Eigen::Index>(tracked.size()));
    for (std::size_t g = 0; g < gts.size(); ++g) {
      const Eigen::Vector2d gc(gts[g].box.x, gts[g].box.y);
      for (std::size_t t = 0; t < tracked.size(); ++t) {
        costs(g, t) = (gc - tracked[t].center).norm();
      }
    }
    for (const auto& m : Hungarian(costs)) {
      if (costs(m.gt, m.pred) > match_threshold) continue;
      const int gt_id = gts[m.gt].id;
      const int track_id = tracked[m.pred].track_id;
      const auto it = last_track.find(gt_id);
      if (it != last_track.end() && it->second != track_id) ++switches;
      last_track[gt_id] = track_id;
    }
  }
  return switches;
}

}  // namespace polar3d
