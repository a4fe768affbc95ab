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

#include "moralkit/simon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "moralkit/error.hpp"
#include "moralkit/util.hpp"

namespace moralkit {

WordSelection select_words(const Lexicon& lexicon, const EmbeddingStore& store,
                           std::optional<int> per_trait_limit) {
  if (per_trait_limit && *per_trait_limit < 1) {
    throw ConfigError("per-trait limit must be at least 1");
  }
  WordSelection sel;
  std::set<std::string> taken;
  for (MoralTrait trait : kLexiconTraits) {
    // valence_index already excludes multi-word lemmas.
    std::vector<std::pair<std::string, double>> present;
    for (const auto& [lemma, valence] : lexicon.valence_index(trait)) {
      if (store.find(lemma)) present.emplace_back(lemma, valence);
    }
    std::sort(present.begin(), present.end(),
              [](const auto& a, const auto& b) {
                const double ea = std::abs(a.second - 5.0);
                const double eb = std::abs(b.second - 5.0);
                if (ea != eb) return ea > eb;
                return a.first < b.first;
              });
    std::size_t limit = present.size();
    if (per_trait_limit) {
      limit = std::min<std::size_t>(limit,
                                    static_cast<std::size_t>(*per_trait_limit));
    }
    for (std::size_t i = 0; i < limit; ++i) {
      if (taken.insert(present[i].first).second) {
        sel.words.push_back(present[i].first);
      }
    }
  }
  if (sel.words.empty()) {
    throw MetricError(
        "no lexicon word has an embedding; the vocabularies are disjoint");
  }
  return sel;
}

void save_selection(const WordSelection& sel, const std::string& path) {
  std::string out;
  for (const auto& w : sel.words) {
    out += w;
    out += '\n';
  }
  write_file_atomic(path, out);
}

WordSelection load_selection(const std::string& path) {
  WordSelection sel;
  for (const auto& line : split(read_file(path), '\n')) {
    const std::string w = trim(line);
    if (!w.empty()) sel.words.push_back(w);
  }
  return sel;
}

std::vector<double> simon_vector(const std::vector<std::string>& tokens,
                                 const WordSelection& selection,
                                 const EmbeddingStore& store,
                                 Pooling pooling) {
  std::vector<const std::vector<double>*> embedded;
  for (const auto& t : tokens) {
    if (const auto* v = store.find(t)) embedded.push_back(v);
  }
  std::vector<double> out(selection.size(), 0.0);
  if (embedded.empty()) return out;

  for (std::size_t j = 0; j < selection.size(); ++j) {
    const auto* anchor = store.find(selection.words[j]);
    if (!anchor) {
      throw ValidationError("anchor word '" + selection.words[j] +
                            "' has no embedding");
    }
    double pooled = pooling == Pooling::Max
                        ? -std::numeric_limits<double>::infinity()
                        : 0.0;
    for (const auto* tok : embedded) {
      const double sim = cosine_similarity(*tok, *anchor);
      if (pooling == Pooling::Max) {
        pooled = std::max(pooled, sim);
      } else {
        pooled += sim;
      }
    }
    if (pooling == Pooling::Mean) {
      pooled /= static_cast<double>(embedded.size());
    }
    out[j] = pooled;
  }
  return out;
}

}  // namespace moralkit
