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

#ifndef AQUASUB_EMBEDDED_DATA_H_
#define AQUASUB_EMBEDDED_DATA_H_

#include <string_view>

namespace aquasub::internal {

// Contents of core/data/stoplist.txt and core/data/templates.tsv.
extern const std::string_view kDefaultStoplistText;
extern const std::string_view kDefaultTemplatesText;

}  // namespace aquasub::internal

#endif  // AQUASUB_EMBEDDED_DATA_H_
