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

#include "aquasub/error.h"

namespace aquasub {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedLine: return "malformed_line";
    case ErrorCode::kMalformedHeader: return "malformed_header";
    case ErrorCode::kDuplicateEdgeId: return "duplicate_edge_id";
    case ErrorCode::kColumnCount: return "column_count";
    case ErrorCode::kNegativeValue: return "negative_value";
    case ErrorCode::kUnparsableNumber: return "unparsable_number";
    case ErrorCode::kCycleDetected: return "cycle_detected";
    case ErrorCode::kUnknownRelationLabel: return "unknown_relation_label";
    case ErrorCode::kInvalidEdge: return "invalid_edge";
    case ErrorCode::kUnknownNode: return "unknown_node";
    case ErrorCode::kMultipleParents: return "multiple_parents";
    case ErrorCode::kNoParent: return "no_parent";
    case ErrorCode::kNotAnIngredient: return "not_an_ingredient";
    case ErrorCode::kAmbiguousLink: return "ambiguous_link";
    case ErrorCode::kDimensionMismatch: return "dimension_mismatch";
    case ErrorCode::kNonFiniteLoss: return "non_finite_loss";
    case ErrorCode::kNoFootprint: return "no_footprint";
    case ErrorCode::kNotARecommendedCandidate:
      return "not_a_recommended_candidate";
    case ErrorCode::kInvalidSnapshot: return "invalid_snapshot";
    case ErrorCode::kInvalidModel: return "invalid_model";
    case ErrorCode::kInvalidConfig: return "invalid_config";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

std::string Error::Format(ErrorCode code, const std::string &message,
                          std::size_t line) {
  std::string out(ErrorCodeName(code));
  if (line > 0) out += " at line " + std::to_string(line);
  if (!message.empty()) out += ": " + message;
  return out;
}

}  // namespace aquasub
