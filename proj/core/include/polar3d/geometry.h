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

#ifndef POLAR3D_GEOMETRY_H_
#define POLAR3D_GEOMETRY_H_

// Box and velocity parametrizations around the ego vehicle.
//
// Ego frame: right-handed, x forward, y left, z up. Azimuth is measured in
// the ground plane from +x, counter-clockwise seen from +z. Yaw is the box
// heading in the same ego frame (not relative to the radial direction).
// Azimuth and yaw are only ever stored as (sin, cos) pairs.

namespace polar3d {

// Raw, unconstrained regression head output before decoding.
struct BoxEncoding {
  double r = 0.0;
  double sin_a = 0.0;
  double cos_a = 1.0;
  double z = 0.0;
  double l = 0.0;
  double w = 0.0;
  double h = 0.0;
  double sin_t = 0.0;
  double cos_t = 1.0;
};

struct PolarBox {
  double r = 0.0;       // planar distance of the geometric center, meters
  double sin_a = 0.0;   // azimuth pair
  double cos_a = 1.0;
  double z = 0.0;       // center height, meters
  double l = 1.0;
  double w = 1.0;
  double h = 1.0;
  double sin_t = 0.0;   // yaw pair
  double cos_t = 1.0;
};

struct CartesianBox {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double l = 1.0;
  double w = 1.0;
  double h = 1.0;
  double yaw = 0.0;  // (-pi, pi]
};

struct CartesianVelocity {
  double vx = 0.0;
  double vy = 0.0;
};

// v_rad > 0 moves away from the ego origin, v_tan > 0 increases azimuth.
struct PolarVelocity {
  double v_rad = 0.0;
  double v_tan = 0.0;
};

struct RangeConfig {
  double r_max = 50.0;
  double z_min = -5.0;
  double z_max = 3.0;
  double k_scaling = 20.0;

  // Throws InvalidArgument unless r_max > 0, z_max > z_min, k_scaling >= 1.
  void Validate() const;
};

inline constexpr double kUnitPairTolerance = 1e-9;

// Sigmoid pre-image bound used by the lenient encoder.
inline constexpr double kLenientLogitClamp = 15.0;

// Throws InvalidArgument when `box` breaks the PolarBox invariants
// (r >= 0, unit angle pairs, positive size, all finite).
void ValidatePolarBox(const PolarBox& box);
bool IsValidPolarBox(const PolarBox& box);

// r = sigmoid(b_r) * R_max, z = sigmoid(b_z) * (Z_max - Z_min) + Z_min,
// sizes = exp(b_*), angle pairs L2-normalized.
//
// Throws InvalidArgument on non-finite input or a zero-norm angle pair.
PolarBox DecodeBoxEncoding(const BoxEncoding& enc, const RangeConfig& range);

// Inverse of DecodeBoxEncoding. Requires 0 < r < R_max and
// Z_min < z < Z_max strictly; boundary or exterior values throw RangeError.
BoxEncoding EncodePolarBox(const PolarBox& box, const RangeConfig& range);

// Same as EncodePolarBox but clamps the r and z logits to
// [-kLenientLogitClamp, kLenientLogitClamp] instead of throwing. Intended
// for generating fixtures from boxes that may sit on the range boundary.
BoxEncoding EncodePolarBoxLenient(const PolarBox& box,
                                  const RangeConfig& range);

// Throws InvalidArgument when (x, y) is the origin (azimuth undefined).
PolarBox CartesianToPolar(const CartesianBox& box);

// r == 0 maps to the origin regardless of the azimuth pair.
CartesianBox PolarToCartesian(const PolarBox& box);

// Rotates (vx, vy) into the radial/tangential frame at azimuth (sin_a,
// cos_a). Throws InvalidArgument unless the pair is unit within
// kUnitPairTolerance.
PolarVelocity VelocityCartesianToPolar(const CartesianVelocity& v,
                                       double sin_a, double cos_a);
CartesianVelocity VelocityPolarToCartesian(const PolarVelocity& v,
                                           double sin_a, double cos_a);

// Maps any finite angle into (-pi, pi]; -pi maps to pi.
double WrapAngle(double angle);

// Diagnostic conversions; the parametrization itself never stores angles.
double AzimuthOf(const PolarBox& box);
double YawOf(const PolarBox& box);

double Sigmoid(double x);
double Logit(double p);

}  // namespace polar3d

#endif  // POLAR3D_GEOMETRY_H_
