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

#ifndef MORALKIT_FEATURES_HPP_
#define MORALKIT_FEATURES_HPP_

#include <string>
#include <vector>

#include "moralkit/feature_vector.hpp"
#include "moralkit/lexicon.hpp"

namespace moralkit {

enum class FreqMode {
  // A matched token counts on the virtue pole when its moral_valence is
  // above the scale midpoint, on the vice pole when below; exactly neutral
  // tokens count on neither.
  Valence,
  // A matched token counts on the poles its dictionary polarity labels name.
  // This is how a plain membership dictionary without scores is used.
  PolarityLabel,
};

// Ten components: per trait in canonical order, the virtue-pole and
// vice-pole match counts divided by the total token count, out-of-lexicon
// tokens included in the denominator. An empty document maps to all zeros.
FeatureVector moral_freq(const std::vector<std::string>& tokens,
                         const Lexicon& lexicon,
                         FreqMode mode = FreqMode::Valence);

// Twenty components: per trait in canonical order, mean, population SD,
// median, and max of the moral_valence multiset of matched tokens. A trait
// with no matches fills in the neutral value (mean = median = max = neutral,
// SD = 0).
FeatureVector moral_stats(const std::vector<std::string>& tokens,
                          const Lexicon& lexicon, double neutral = 5.0);

// Concatenates parts, prefixing each component name with "<part>." to keep
// the combined schema unique. A name collision after prefixing is an error.
FeatureVector concat_features(const std::vector<FeatureVector>& parts);

}  // namespace moralkit

#endif  // MORALKIT_FEATURES_HPP_
