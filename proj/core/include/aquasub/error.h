// Copyright 2026 The AquaSub Authors.
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

#ifndef AQUASUB_ERROR_H_
#define AQUASUB_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace aquasub {

// Every failure the library reports carries one of these codes. The service
// maps each code onto exactly one HTTP status.
enum class ErrorCode {
  kMalformedLine,
  kMalformedHeader,
  kDuplicateEdgeId,
  kColumnCount,
  kNegativeValue,
  kUnparsableNumber,
  kCycleDetected,
  kUnknownRelationLabel,
  kInvalidEdge,
  kUnknownNode,
  kMultipleParents,
  kNoParent,
  kNotAnIngredient,
  kAmbiguousLink,
  kDimensionMismatch,
  kNonFiniteLoss,
  kNoFootprint,
  kNotARecommendedCandidate,
  kInvalidSnapshot,
  kInvalidModel,
  kInvalidConfig,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message, std::size_t line = 0)
      : std::runtime_error(Format(code, message, line)),
        code_(code),
        line_(line),
        detail_(message) {}

  ErrorCode code() const { return code_; }

  // 1-based source line, or 0 when the error is not tied to a line.
  std::size_t line() const { return line_; }

  const std::string &detail() const { return detail_; }

 private:
  static std::string Format(ErrorCode code, const std::string &message,
                            std::size_t line);

  ErrorCode code_;
  std::size_t line_;
  std::string detail_;
};

}  // namespace aquasub

#endif  // AQUASUB_ERROR_H_
