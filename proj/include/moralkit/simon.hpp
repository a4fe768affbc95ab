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

#ifndef MORALKIT_SIMON_HPP_
#define MORALKIT_SIMON_HPP_

#include <optional>
#include <string>
#include <vector>

#include "moralkit/embeddings.hpp"
#include "moralkit/lexicon.hpp"

namespace moralkit {

// Anchor words for the similarity representation: one similarity component
// per word, in a fixed order.
struct WordSelection {
  std::vector<std::string> words;

  std::size_t size() const { return words.size(); }
};

// Picks the lexicon lemmas that have an embedding, trait by trait in
// canonical order. Within a trait, words are ordered by |moral_valence - 5|
// descending (most polarized first) with alphabetical tie-breaks, and
// per_trait_limit, when given, truncates each trait's list. Multi-word
// lemmas never qualify; a surface form listed under several traits is kept
// only at its first appearance. An empty intersection is an error.
WordSelection select_words(const Lexicon& lexicon, const EmbeddingStore& store,
                           std::optional<int> per_trait_limit = {});

// One anchor word per line.
void save_selection(const WordSelection& sel, const std::string& path);
WordSelection load_selection(const std::string& path);

enum class Pooling { Max, Mean };

// Similarity representation of a token list: component j pools
// cosine(token, anchor_j) over the document tokens that have embeddings.
// With max pooling the vector is invariant under token permutation and
// duplication, and an anchor occurring in the document pins its component
// to 1. A document with no embedded tokens maps to the zero vector.
std::vector<double> simon_vector(const std::vector<std::string>& tokens,
                                 const WordSelection& selection,
                                 const EmbeddingStore& store,
                                 Pooling pooling = Pooling::Max);

}  // namespace moralkit

#endif  // MORALKIT_SIMON_HPP_
