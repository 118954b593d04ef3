// Copyright 2026 The gaugeint Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gaugeint {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition of an operation was violated by the caller.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public InvalidArgument {
 public:
  DimensionMismatch(std::size_t expected, std::size_t got)
      : InvalidArgument("dimension mismatch: expected " + std::to_string(expected) +
                        ", got " + std::to_string(got)) {}
};

class IndexOutOfRange : public InvalidArgument {
 public:
  IndexOutOfRange(std::size_t index, std::size_t count)
      : InvalidArgument("seminorm index " + std::to_string(index) + " out of range (" +
                        std::to_string(count) + " seminorms)") {}
};

class OutsideDomain : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Cousin bisection needed more levels than allowed; the gauge is too small
/// to resolve at the given depth budget.
class DepthExceeded : public Error {
 public:
  DepthExceeded(double u, double v, int depth_limit)
      : Error("cousin bisection exceeded depth " + std::to_string(depth_limit) +
              " near [" + std::to_string(u) + ", " + std::to_string(v) + "]"),
        u_(u),
        v_(v) {}

  double u() const noexcept { return u_; }
  double v() const noexcept { return v_; }

 private:
  double u_;
  double v_;
};

/// A sequence does not look Cauchy on the tested prefix.
class NotCauchyOnPrefix : public Error {
 public:
  NotCauchyOnPrefix(const std::string& what, std::size_t seminorm)
      : Error(what), seminorm_(seminorm) {}

  /// One-based index of the offending seminorm (0 when not applicable).
  std::size_t seminorm() const noexcept { return seminorm_; }

 private:
  std::size_t seminorm_;
};

/// A level set is not representable as a finite union of intervals.
class NotRepresentable : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

}  // namespace gaugeint
