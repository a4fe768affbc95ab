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

#include "moralkit/features.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "moralkit/error.hpp"

namespace moralkit {

namespace {

std::shared_ptr<const FeatureNames> freq_schema() {
  static const auto schema = [] {
    auto names = std::make_shared<FeatureNames>();
    for (MoralTrait t : kLexiconTraits) {
      names->push_back(std::string(trait_name(t)) + "_virtue");
      names->push_back(std::string(trait_name(t)) + "_vice");
    }
    return names;
  }();
  return schema;
}

std::shared_ptr<const FeatureNames> stats_schema() {
  static const auto schema = [] {
    auto names = std::make_shared<FeatureNames>();
    for (MoralTrait t : kLexiconTraits) {
      for (const char* stat : {"mean", "sd", "median", "max"}) {
        names->push_back(std::string(trait_name(t)) + "_" + stat);
      }
    }
    return names;
  }();
  return schema;
}

}  // namespace

FeatureVector moral_freq(const std::vector<std::string>& tokens,
                         const Lexicon& lexicon, FreqMode mode) {
  FeatureVector fv;
  fv.name = mode == FreqMode::Valence ? "moral_freq" : "mfd_freq";
  fv.schema = freq_schema();
  fv.values.assign(10, 0.0);
  if (tokens.empty()) return fv;

  const bool use_stems =
      mode == FreqMode::PolarityLabel && lexicon.entries().empty();
  for (const auto& tok : tokens) {
    for (std::size_t ti = 0; ti < kLexiconTraits.size(); ++ti) {
      const MoralTrait trait = kLexiconTraits[ti];
      bool virtue = false;
      bool vice = false;
      if (mode == FreqMode::Valence) {
        const auto& index = lexicon.valence_index(trait);
        auto it = index.find(tok);
        if (it != index.end()) {
          virtue = it->second > 5.0;
          vice = it->second < 5.0;
        }
      } else if (use_stems) {
        const auto poles = lexicon.stem_poles(tok, trait);
        virtue = poles.virtue;
        vice = poles.vice;
      } else {
        const auto& index = lexicon.polarity_index(trait);
        auto it = index.find(tok);
        if (it != index.end()) {
          virtue = it->second.virtue;
          vice = it->second.vice;
        }
      }
      if (virtue) fv.values[2 * ti] += 1.0;
      if (vice) fv.values[2 * ti + 1] += 1.0;
    }
  }
  const double total = static_cast<double>(tokens.size());
  for (double& v : fv.values) v /= total;
  return fv;
}

FeatureVector moral_stats(const std::vector<std::string>& tokens,
                          const Lexicon& lexicon, double neutral) {
  FeatureVector fv;
  fv.name = "moral_stats";
  fv.schema = stats_schema();
  fv.values.assign(20, 0.0);

  for (std::size_t ti = 0; ti < kLexiconTraits.size(); ++ti) {
    const auto& index = lexicon.valence_index(kLexiconTraits[ti]);
    std::vector<double> matched;
    for (const auto& tok : tokens) {
      auto it = index.find(tok);
      if (it != index.end()) matched.push_back(it->second);
    }
    double mean = neutral, sd = 0.0, median = neutral, mx = neutral;
    if (!matched.empty()) {
      const double n = static_cast<double>(matched.size());
      double sum = 0.0;
      for (double v : matched) sum += v;
      mean = sum / n;
      double ss = 0.0;
      for (double v : matched) ss += (v - mean) * (v - mean);
      sd = std::sqrt(ss / n);
      std::sort(matched.begin(), matched.end());
      const std::size_t mid = matched.size() / 2;
      median = matched.size() % 2 == 1
                   ? matched[mid]
                   : 0.5 * (matched[mid - 1] + matched[mid]);
      mx = matched.back();
    }
    fv.values[4 * ti + 0] = mean;
    fv.values[4 * ti + 1] = sd;
    fv.values[4 * ti + 2] = median;
    fv.values[4 * ti + 3] = mx;
  }
  return fv;
}

FeatureVector concat_features(const std::vector<FeatureVector>& parts) {
  if (parts.empty()) throw ValidationError("concat of zero feature parts");
  FeatureVector fv;
  auto names = std::make_shared<FeatureNames>();
  std::set<std::string> seen;
  for (const auto& part : parts) {
    if (part.name.empty()) {
      throw ValidationError("feature part without a name");
    }
    if (!part.schema || part.schema->size() != part.values.size()) {
      throw ValidationError("feature part '" + part.name +
                            "' has a schema/value size mismatch");
    }
    if (!fv.name.empty()) fv.name += '+';
    fv.name += part.name;
    for (const auto& comp : *part.schema) {
      std::string full = part.name + "." + comp;
      if (!seen.insert(full).second) {
        throw ValidationError("feature name collision: '" + full + "'");
      }
      names->push_back(std::move(full));
    }
    fv.values.insert(fv.values.end(), part.values.begin(), part.values.end());
  }
  fv.schema = std::move(names);
  return fv;
}

}  // namespace moralkit
