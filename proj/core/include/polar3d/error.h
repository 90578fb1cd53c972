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

#ifndef POLAR3D_ERROR_H_
#define POLAR3D_ERROR_H_

#include <stdexcept>
#include <string>

namespace polar3d {

// Input violates a documented precondition (non-finite values, zero-norm
// angle pairs, malformed configuration, bad indices).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A value lies on or outside the open interval an inverse transform needs,
// e.g. the logit of r / R_max at r == R_max.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// An L1 residual sits on (or too close to) its non-differentiable point.
class KinkError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Reading or writing a file failed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace polar3d

#endif  // POLAR3D_ERROR_H_
