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

#include "cli.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "polar3d/assignment.h"
#include "polar3d/camera.h"
#include "polar3d/error.h"
#include "polar3d/eval.h"
#include "polar3d/fixtures.h"
#include "polar3d/loss.h"
#include "polar3d/scene_io.h"
#include "polar3d/simulator.h"
#include "polar3d/tracker.h"

namespace polar3d::cli {
namespace {

using nlohmann::json;

std::string FormatDouble(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// RFC 4180: quote fields holding a comma, quote or line break.
std::string CsvField(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

std::string CsvRow(const std::vector<std::string>& fields) {
  std::string row;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) row += ',';
    row += CsvField(fields[i]);
  }
  return row + "\r\n";
}

void Emit(const std::string& path, const std::string& text,
          std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    WriteTextFile(path, text);
  }
}

std::vector<double> ParseList(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw InvalidArgument("cannot parse number '" + item + "'");
    }
    if (used != item.size()) {
      throw InvalidArgument("cannot parse number '" + item + "'");
    }
    values.push_back(v);
  }
  return values;
}

// Appends "--key=value" for every entry of a JSON config object so that the
// file overrides flags given earlier on the command line.
std::vector<std::string> ExpandConfig(const std::vector<std::string>& args) {
  std::vector<std::string> expanded;
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[++i];
      continue;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
      continue;
    }
    expanded.push_back(args[i]);
  }
  if (config_path.empty()) return expanded;

  json config;
  try {
    config = json::parse(ReadTextFile(config_path));
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed config: ") + e.what());
  }
  if (!config.is_object()) throw InvalidArgument("config must be an object");
  for (const auto& [key, value] : config.items()) {
    std::string text;
    if (value.is_string()) {
      text = value.get<std::string>();
    } else if (value.is_boolean()) {
      text = value.get<bool>() ? "true" : "false";
    } else if (value.is_number_integer()) {
      text = std::to_string(value.get<long long>());
    } else if (value.is_number()) {
      text = FormatDouble(value.get<double>());
    } else if (value.is_array()) {
      for (const auto& item : value) {
        if (!text.empty()) text += ',';
        text += item.is_number() ? FormatDouble(item.get<double>())
                                 : item.get<std::string>();
      }
    } else {
      throw InvalidArgument("unsupported config value for " + key);
    }
    expanded.push_back("--" + key + "=" + text);
  }
  return expanded;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  SceneConfig scene;
  int cameras = 6;
  std::string ego = "static";
  std::string out;
};

void AddSimulate(CLI::App& app, SimulateArgs& a) {
  auto* sub = app.add_subcommand("simulate", "Generate a synthetic scene");
  sub->add_option("--objects", a.scene.num_objects, "Number of objects");
  sub->add_option("--frames", a.scene.num_frames, "Number of frames");
  sub->add_option("--dt", a.scene.dt, "Seconds between frames");
  sub->add_option("--min-speed", a.scene.min_speed, "m/s");
  sub->add_option("--max-speed", a.scene.max_speed, "m/s");
  sub->add_option("--r-min", a.scene.r_min, "Placement radius lower bound");
  sub->add_option("--r-max", a.scene.r_max, "Placement radius upper bound");
  sub->add_option("--classes", a.scene.num_classes, "Number of classes");
  sub->add_option("--ego", a.ego, "static | straight | arc")
      ->check(CLI::IsMember({"static", "straight", "arc"}));
  sub->add_option("--ego-speed", a.scene.ego_speed, "m/s");
  sub->add_option("--ego-yaw-rate", a.scene.ego_yaw_rate, "rad/s");
  sub->add_option("--clip-to-range", a.scene.clip_to_range,
                  "Omit objects beyond r-max");
  sub->add_option("--cameras", a.cameras, "Cameras in the symmetric rig");
  sub->add_option("--seed", a.scene.seed, "Random seed");
  sub->add_option("--out", a.out, "Scene JSON path (default stdout)");
}

int RunSimulate(SimulateArgs& a, std::ostream& out) {
  a.scene.ego_trajectory = a.ego == "straight" ? EgoTrajectory::kStraight
                           : a.ego == "arc"    ? EgoTrajectory::kArc
                                               : EgoTrajectory::kStatic;
  const Rig def = MakeDefaultRig();
  a.scene.rig = MakeSymmetricRig(a.cameras, def.cameras[0].intrinsics,
                                 Eigen::Vector3d(1.0, 0.0, 1.5),
                                 def.cameras[0].image_size);
  Emit(a.out, SceneToJson(GenerateScene(a.scene)), out);
  return kExitOk;
}

// ------------------------------------------------------------------ render

struct RenderArgs {
  NoiseModel noise;
  std::string space = "polar";
  std::string scene;
  std::string out;
};

void AddRender(CLI::App& app, RenderArgs& a) {
  auto* sub = app.add_subcommand("render", "Render noisy detections");
  sub->add_option("--scene", a.scene, "Scene JSON")->required();
  sub->add_option("--radial-std", a.noise.radial_std, "m");
  sub->add_option("--tangential-std", a.noise.tangential_std, "rad");
  sub->add_option("--z-std", a.noise.z_std, "m");
  sub->add_option("--size-std", a.noise.size_std, "relative");
  sub->add_option("--yaw-std", a.noise.yaw_std, "rad");
  sub->add_option("--velocity-std", a.noise.velocity_std, "m/s");
  sub->add_option("--score-std", a.noise.score_std, "score spread");
  sub->add_option("--drop", a.noise.drop_probability, "Drop probability");
  sub->add_option("--fp-rate", a.noise.false_positive_rate,
                  "False positives per frame (Poisson mean)");
  sub->add_option("--fp-max-score", a.noise.false_positive_max_score,
                  "Upper bound of false-positive scores");
  sub->add_option("--fp-r-max", a.noise.false_positive_r_max,
                  "False-positive placement radius");
  sub->add_option("--classes", a.noise.num_classes, "Number of classes");
  sub->add_option("--noise-space", a.space, "polar | cartesian")
      ->check(CLI::IsMember({"polar", "cartesian"}));
  sub->add_option("--seed", a.noise.seed, "Random seed");
  sub->add_option("--out", a.out, "Detections JSON path (default stdout)");
}

int RunRender(RenderArgs& a, std::ostream& out) {
  a.noise.space =
      a.space == "cartesian" ? NoiseSpace::kCartesian : NoiseSpace::kPolar;
  const Scene scene = LoadScene(a.scene);
  Emit(a.out, DetectionsToJson(RenderDetections(scene, a.noise)), out);
  return kExitOk;
}

// ------------------------------------------------------------------ assign

struct AssignArgs {
  std::string scene;
  std::string detections;
  std::string out;
  double k_scaling = 20.0;
  std::string range = "circular";
  double r_max = 50.0;
  double x_max = 50.0;
  double y_max = 50.0;
  std::string class_cost = "prob";
};

void AddAssign(CLI::App& app, AssignArgs& a) {
  auto* sub = app.add_subcommand("assign", "Hungarian label assignment");
  sub->add_option("--scene", a.scene, "Scene JSON")->required();
  sub->add_option("--detections", a.detections, "Detections JSON")
      ->required();
  sub->add_option("--out", a.out, "Assignment JSON path (default stdout)");
  sub->add_option("--k-scaling", a.k_scaling, "Azimuth cost scale");
  sub->add_option("--range", a.range, "circular | rectangular")
      ->check(CLI::IsMember({"circular", "rectangular"}));
  sub->add_option("--r-max", a.r_max, "Circular range radius");
  sub->add_option("--x-max", a.x_max, "Rectangular half-extent along x");
  sub->add_option("--y-max", a.y_max, "Rectangular half-extent along y");
  sub->add_option("--class-cost", a.class_cost, "prob | focal")
      ->check(CLI::IsMember({"prob", "focal"}));
}

int RunAssign(const AssignArgs& a, std::ostream& out) {
  const Scene scene = LoadScene(a.scene);
  const DetectionSet dets = LoadDetections(a.detections);
  if (scene.frames.size() != dets.frames.size()) {
    throw InvalidArgument("scene and detections differ in frame count");
  }
  const PerceptionRange range = a.range == "rectangular"
                                    ? PerceptionRange::Rectangular(a.x_max,
                                                                   a.y_max)
                                    : PerceptionRange::Circular(a.r_max);
  ClassCostOptions cls;
  cls.mode = a.class_cost == "focal" ? ClassCostMode::kFocal
                                     : ClassCostMode::kNegativeProbability;

  json frames = json::array();
  for (std::size_t f = 0; f < scene.frames.size(); ++f) {
    const auto& objects = scene.frames[f].objects;
    std::vector<CartesianBox> boxes;
    for (const auto& o : objects) boxes.push_back(o.box);
    const RangeFilterResult filtered = FilterPerceptionRange(boxes, range);

    std::vector<LabeledBox> gts;
    for (std::size_t idx : filtered.kept_indices) {
      gts.push_back({ObjectPolarBox(objects[idx]), objects[idx].class_id});
    }
    std::vector<ScoredPrediction> preds;
    for (const auto& d : dets.frames[f].detections) {
      preds.push_back({d.box, d.class_probs});
    }
    const CostMatrix costs = BuildCostMatrix(preds, gts, a.k_scaling, cls);
    const Assignment assignment = Hungarian(costs);

    json pairs = json::array();
    for (const auto& m : assignment) {
      const double box = BoxCost(preds[m.pred].box, gts[m.gt].box, a.k_scaling);
      const double class_cost =
          ClassCost(preds[m.pred].class_probs, gts[m.gt].class_id, cls);
      pairs.push_back(
          {{"gt_id", objects[filtered.kept_indices[m.gt]].id},
           {"gt_index", static_cast<int>(filtered.kept_indices[m.gt])},
           {"pred_index", m.pred},
           {"class_cost", class_cost},
           {"box_cost", box},
           {"cost", costs(m.gt, m.pred)}});
    }
    json dropped = json::array();
    for (std::size_t idx : filtered.dropped_indices) {
      dropped.push_back(objects[idx].id);
    }
    frames.push_back({{"frame", static_cast<int>(f)},
                      {"t", scene.frames[f].t},
                      {"num_gt", static_cast<int>(gts.size())},
                      {"num_pred", static_cast<int>(preds.size())},
                      {"dropped_gt_ids", dropped},
                      {"pairs", pairs},
                      {"total_cost", TotalCost(costs, assignment)}});
  }
  const json root = {{"k_scaling", a.k_scaling},
                     {"range", a.range},
                     {"frames", frames}};
  Emit(a.out, root.dump(1) + "\n", out);
  return kExitOk;
}

// ------------------------------------------------------------------- track

struct TrackArgs {
  std::string detections;
  std::string scene;
  std::string out;
  std::string summary;
  TrackerConfig config;
  std::string matching = "greedy";
};

void AddTrack(CLI::App& app, TrackArgs& a) {
  auto* sub = app.add_subcommand("track", "Tracking by detection");
  sub->add_option("--detections", a.detections, "Detections JSON")
      ->required();
  sub->add_option("--scene", a.scene, "Ground-truth scene for id switches");
  sub->add_option("--out", a.out, "Tracks JSON path (default stdout)");
  sub->add_option("--summary", a.summary,
                  "Summary JSON path (default: printed to stdout)");
  sub->add_option("--threshold", a.config.distance_threshold, "Meters");
  sub->add_option("--max-misses", a.config.max_misses,
                  "Consecutive misses before a track retires");
  sub->add_option("--matching", a.matching, "greedy | hungarian")
      ->check(CLI::IsMember({"greedy", "hungarian"}));
}

int RunTrack(TrackArgs& a, std::ostream& out) {
  a.config.matching = a.matching == "hungarian" ? TrackMatching::kHungarian
                                                : TrackMatching::kGreedy;
  const DetectionSet dets = LoadDetections(a.detections);
  const TrackingRun run = RunTracker(dets, a.config);

  json frames = json::array();
  for (std::size_t f = 0; f < dets.frames.size(); ++f) {
    json list = json::array();
    const auto& frame_dets = dets.frames[f].detections;
    for (std::size_t d = 0; d < frame_dets.size(); ++d) {
      const auto& det = frame_dets[d];
      const auto& b = det.box;
      list.push_back(
          {{"track_id", run.steps[f].track_ids[d]},
           {"box",
            {b.r, b.sin_a, b.cos_a, b.z, b.l, b.w, b.h, b.sin_t, b.cos_t}},
           {"score", det.score},
           {"probs", det.class_probs},
           {"velocity", {det.velocity.v_rad, det.velocity.v_tan}}});
    }
    frames.push_back({{"frame", static_cast<int>(f)},
                      {"t", dets.frames[f].t},
                      {"detections", list}});
  }
  json summary = {{"frames", static_cast<int>(dets.frames.size())},
                  {"tracks_created", run.tracks_created}};
  if (!a.scene.empty()) {
    summary["id_switches"] =
        CountIdSwitches(run.history, LoadScene(a.scene),
                        a.config.distance_threshold);
  }
  const json root = {{"schema_version", kSceneSchemaVersion},
                     {"frames", frames},
                     {"summary", summary}};
  Emit(a.out, root.dump(1) + "\n", out);
  if (!a.summary.empty()) {
    WriteTextFile(a.summary, summary.dump(1) + "\n");
  } else if (!a.out.empty()) {
    out << summary.dump(1) << "\n";
  }
  return kExitOk;
}

// -------------------------------------------------------------------- eval

struct EvalArgs {
  std::string scene;
  std::string detections;
  std::string out;
  std::string format = "json";
  double tp_threshold = 2.0;
  double maae = 0.0;
};

void AddEval(CLI::App& app, EvalArgs& a) {
  auto* sub = app.add_subcommand("eval", "Detection metrics and NDS");
  sub->add_option("--scene", a.scene, "Scene JSON")->required();
  sub->add_option("--detections", a.detections,
                  "Detections or tracks JSON")
      ->required();
  sub->add_option("--out", a.out, "Report path (default stdout)");
  sub->add_option("--format", a.format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--tp-threshold", a.tp_threshold,
                  "Center distance for TP errors (m)");
  sub->add_option("--maae", a.maae,
                  "Attribute error to use in NDS (not computed)");
}

int RunEval(const EvalArgs& a, std::ostream& out) {
  const Scene scene = LoadScene(a.scene);
  const DetectionSet dets = LoadDetections(a.detections);
  const EvaluationReport report =
      Evaluate(scene, dets, a.tp_threshold, a.maae);

  std::vector<std::pair<std::string, std::optional<double>>> rows;
  for (std::size_t i = 0; i < kApDistanceThresholds.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "ap_%g", kApDistanceThresholds[i]);
    rows.emplace_back(name, report.ap[i]);
  }
  rows.emplace_back("map", report.map);
  const auto tp = report.tp;
  rows.emplace_back("mate", tp ? std::optional(tp->ate) : std::nullopt);
  rows.emplace_back("mase", tp ? std::optional(tp->ase) : std::nullopt);
  rows.emplace_back("maoe", tp ? std::optional(tp->aoe) : std::nullopt);
  rows.emplace_back("mave", tp ? std::optional(tp->ave) : std::nullopt);
  rows.emplace_back("maae", a.maae);
  rows.emplace_back("nds", report.nds);
  rows.emplace_back("num_true_positives", report.num_true_positives);
  rows.emplace_back("num_predictions", report.num_predictions);
  rows.emplace_back("num_ground_truth", report.num_ground_truth);

  std::string text;
  if (a.format == "csv") {
    text = CsvRow({"metric", "value"});
    for (const auto& [name, value] : rows) {
      text += CsvRow({name, value ? FormatDouble(*value) : ""});
    }
  } else {
    json root = json::object();
    for (const auto& [name, value] : rows) {
      root[name] = value ? json(*value) : json(nullptr);
    }
    text = root.dump(1) + "\n";
  }
  Emit(a.out, text, out);
  return kExitOk;
}

// ---------------------------------------------------------- symmetry-check

struct SymmetryArgs {
  int cameras = 6;
  std::uint64_t seed = 7;
  int points = 100;
  std::string out;
};

void AddSymmetry(CLI::App& app, SymmetryArgs& a) {
  auto* sub = app.add_subcommand(
      "symmetry-check",
      "Rotate visible points by one camera step and compare projections");
  sub->add_option("--cameras", a.cameras, "Cameras in the symmetric rig");
  sub->add_option("--seed", a.seed, "Random seed");
  sub->add_option("--points", a.points, "Number of random visible points");
  sub->add_option("--out", a.out, "Report path (default stdout)");
}

int RunSymmetry(const SymmetryArgs& a, std::ostream& out) {
  if (a.points < 1) throw InvalidArgument("--points must be >= 1");
  const Rig def = MakeDefaultRig();
  const Rig rig = MakeSymmetricRig(a.cameras, def.cameras[0].intrinsics,
                                   Eigen::Vector3d(1.0, 0.0, 1.5),
                                   def.cameras[0].image_size);
  const double step = 2.0 * std::numbers::pi / a.cameras;
  const Eigen::Matrix3d rot = RotationZ(step);
  std::mt19937_64 rng(a.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  double max_pixel = 0.0;
  double max_depth = 0.0;
  int missing = 0;
  for (int i = 0; i < a.points; ++i) {
    const int k = static_cast<int>(unit(rng) * a.cameras) % a.cameras;
    const CameraModel& cam = rig.cameras[k];
    const double u = 1.0 + (cam.image_size.width - 2.0) * unit(rng);
    const double v = 1.0 + (cam.image_size.height - 2.0) * unit(rng);
    const double depth = 2.0 + 58.0 * unit(rng);
    const Ray ray = PixelRay(u, v, cam);
    // Scale along the ray so the camera-frame depth equals `depth`.
    const Eigen::Vector3d dir_cam = cam.ego_to_camera.rotation * ray.direction;
    const Eigen::Vector3d p = ray.origin + (depth / dir_cam.z()) * ray.direction;

    const auto before = ProjectToView(p, cam, k);
    const int next = (k + 1) % a.cameras;
    const auto after = ProjectToView(rot * p, rig.cameras[next], next);
    if (!before || !after) {
      ++missing;
      continue;
    }
    max_pixel = std::max({max_pixel, std::abs(before->u - after->u),
                          std::abs(before->v - after->v)});
    max_depth = std::max(max_depth, std::abs(before->depth - after->depth));
  }
  constexpr double kTolerance = 1e-9;
  const json report = {
      {"cameras", a.cameras},
      {"points", a.points},
      {"seed", a.seed},
      {"max_pixel_discrepancy", max_pixel},
      {"max_depth_discrepancy", max_depth},
      {"points_lost", missing},
      {"tolerance", kTolerance},
      {"passed",
       missing == 0 && max_pixel < kTolerance && max_depth < kTolerance}};
  Emit(a.out, report.dump(1) + "\n", out);
  return kExitOk;
}

// -------------------------------------------------------------- range-demo

int RunRangeDemo(const std::string& path, std::ostream& out) {
  const RangeAmbiguityFixture f = MakeRangeAmbiguityFixture();
  const auto rect = FilterPerceptionRange(f.objects, f.rectangular);
  const auto circ = FilterPerceptionRange(f.objects, f.circular);
  auto status = [](const RangeFilterResult& r, std::size_t i) {
    for (std::size_t k : r.kept_indices) {
      if (k == i) return "kept";
    }
    return "dropped";
  };
  json objects = json::array();
  for (std::size_t i = 0; i < f.objects.size(); ++i) {
    const auto& b = f.objects[i];
    objects.push_back({{"x", b.x},
                       {"y", b.y},
                       {"r", std::hypot(b.x, b.y)},
                       {"rectangular", status(rect, i)},
                       {"circular", status(circ, i)}});
  }
  const json report = {
      {"rectangular", {{"x_max", f.rectangular.x_max},
                       {"y_max", f.rectangular.y_max}}},
      {"circular", {{"r_max", f.circular.r_max}}},
      {"objects", objects}};
  Emit(path, report.dump(1) + "\n", out);
  return kExitOk;
}

// --------------------------------------------------------------- gradcheck

struct GradcheckArgs {
  int fixtures = 200;
  std::uint64_t seed = 0;
  double step = 1e-6;
  double k_scaling = 20.0;
  std::string out;
};

void AddGradcheck(CLI::App& app, GradcheckArgs& a) {
  auto* sub = app.add_subcommand(
      "gradcheck", "Analytic loss gradients vs central differences (CSV)");
  sub->add_option("--fixtures", a.fixtures, "Number of random fixtures");
  sub->add_option("--seed", a.seed, "Random seed");
  sub->add_option("--step", a.step, "Finite-difference step");
  sub->add_option("--k-scaling", a.k_scaling, "Azimuth loss scale");
  sub->add_option("--out", a.out, "CSV path (default stdout)");
}

int RunGradcheck(const GradcheckArgs& a, std::ostream& out) {
  if (a.fixtures < 0) throw InvalidArgument("--fixtures must be >= 0");
  LossConfig config;
  config.range.k_scaling = a.k_scaling;
  config.range.Validate();
  std::mt19937_64 rng(a.seed);
  std::string text = CsvRow({"fixture_id", "max_relative_error"});
  for (int i = 0; i < a.fixtures; ++i) {
    const GradientFixture f = RandomGradientFixture(rng, config);
    const Gradient analytic =
        LossGradient(f.encoding, f.velocity, f.target, config);
    const Gradient numeric = FiniteDifferenceGradient(
        f.encoding, f.velocity, f.target, config, a.step);
    text += CsvRow({std::to_string(i),
                    FormatDouble(MaxRelativeError(analytic, numeric))});
  }
  Emit(a.out, text, out);
  return kExitOk;
}

// --------------------------------------------------------------------- nds

struct NdsArgs {
  double map = 0.0;
  std::string tps;
  int precision = 3;
};

void AddNds(CLI::App& app, NdsArgs& a) {
  auto* sub = app.add_subcommand("nds", "Detection score from sub-metrics");
  sub->add_option("--map", a.map, "Mean average precision")->required();
  sub->add_option("--tps", a.tps, "mATE,mASE,mAOE,mAVE,mAAE")->required();
  sub->add_option("--precision", a.precision, "Printed decimals");
}

int RunNds(const NdsArgs& a, std::ostream& out) {
  const std::vector<double> tps = ParseList(a.tps);
  if (tps.size() != 5) {
    throw InvalidArgument("--tps needs exactly five comma-separated values");
  }
  if (a.precision < 0 || a.precision > 17) {
    throw InvalidArgument("--precision must lie in [0, 17]");
  }
  NdsInput input;
  input.map = a.map;
  std::copy(tps.begin(), tps.end(), input.tp_errors.begin());
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", a.precision, Nds(input));
  out << buf << "\n";
  return kExitOk;
}

}  // namespace

int Run(const std::vector<std::string>& raw_args, std::ostream& out,
        std::ostream& err) {
  std::vector<std::string> args;
  try {
    args = ExpandConfig(raw_args);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  CLI::App app{"polar3d: polar-parametrized surround-view detection toolkit",
               "polar3d"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  SimulateArgs simulate;
  RenderArgs render;
  AssignArgs assign;
  TrackArgs track;
  EvalArgs eval;
  SymmetryArgs symmetry;
  std::string range_out;
  GradcheckArgs gradcheck;
  NdsArgs nds;
  AddSimulate(app, simulate);
  AddRender(app, render);
  AddAssign(app, assign);
  AddTrack(app, track);
  AddEval(app, eval);
  AddSymmetry(app, symmetry);
  app.add_subcommand("range-demo",
                     "Circular vs rectangular range on equal-range objects")
      ->add_option("--out", range_out, "Report path (default stdout)");
  AddGradcheck(app, gradcheck);
  AddNds(app, nds);

  // CLI11 parses in reverse order from a vector.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return kExitValidation;
  }

  try {
    const std::string name = app.get_subcommands().front()->get_name();
    if (name == "simulate") return RunSimulate(simulate, out);
    if (name == "render") return RunRender(render, out);
    if (name == "assign") return RunAssign(assign, out);
    if (name == "track") return RunTrack(track, out);
    if (name == "eval") return RunEval(eval, out);
    if (name == "symmetry-check") return RunSymmetry(symmetry, out);
    if (name == "range-demo") return RunRangeDemo(range_out, out);
    if (name == "gradcheck") return RunGradcheck(gradcheck, out);
    if (name == "nds") return RunNds(nds, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  err << app.help();
  return kExitValidation;
}

}  // namespace polar3d::cli
