// Copyright 2026 The Moralkit Authors.
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

#ifndef MORALKIT_FEATURE_VECTOR_HPP_
#define MORALKIT_FEATURE_VECTOR_HPP_

#include <memory>
#include <string>
#include <vector>

namespace moralkit {

using FeatureNames = std::vector<std::string>;

// A named, schema-carrying dense feature vector. The schema is shared across
// vectors produced by the same extractor, so copies stay cheap even with
// vocabulary-sized schemas.
struct FeatureVector {
  std::string name;  // extractor name, used as a prefix when concatenated
  std::shared_ptr<const FeatureNames> schema;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
};

}  // namespace moralkit

#endif  // MORALKIT_FEATURE_VECTOR_HPP_
