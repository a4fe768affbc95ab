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

#ifndef MORALKIT_TEXTPROC_HPP_
#define MORALKIT_TEXTPROC_HPP_

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "moralkit/feature_vector.hpp"
#include "moralkit/lexicon.hpp"

namespace moralkit {

// Social-media normalization. URLs become <url>, @-mentions <username>,
// "#Word" the two tokens "<hashtag> word", digit runs a standalone <number>;
// anything that is not an ASCII letter or digit collapses to a single space,
// letters are lowercased, and whitespace runs shrink to one space. The
// placeholders themselves survive a second pass, so the function is
// idempotent.
std::string normalize_tweet(std::string_view raw);

// Whitespace split of already-normalized text.
std::vector<std::string> tokenize(std::string_view normalized);

// A labeled text unit. The non-moral label, when present, is the only label.
struct Document {
  std::string id;
  std::string raw_text;
  std::string normalized_text;
  std::vector<std::string> tokens;
  std::set<MoralTrait> labels;
};

// Normalizes and tokenizes; throws ValidationError when non-moral is mixed
// with a moral trait.
Document make_document(std::string id, std::string_view raw,
                       std::set<MoralTrait> labels = {});

// Token list with dense indices, ordered by descending corpus frequency and
// lexicographically within ties.
class Vocabulary {
 public:
  Vocabulary();
  explicit Vocabulary(std::vector<std::string> ordered_tokens);

  std::size_t size() const { return tokens_->size(); }
  std::optional<int> index_of(const std::string& token) const;
  const FeatureNames& tokens() const { return *tokens_; }
  std::shared_ptr<const FeatureNames> schema() const { return tokens_; }

 private:
  std::shared_ptr<const FeatureNames> tokens_;
  std::unordered_map<std::string, int> index_;
};

// Keeps tokens whose total occurrence count reaches min_count.
Vocabulary build_vocab(const std::vector<const Document*>& docs,
                       int min_count);
Vocabulary build_vocab(const std::vector<Document>& docs, int min_count);

// Raw occurrence counts over the vocabulary; out-of-vocabulary tokens are
// ignored.
FeatureVector unigram_features(const std::vector<std::string>& tokens,
                               const Vocabulary& vocab);

}  // namespace moralkit

#endif  // MORALKIT_TEXTPROC_HPP_
