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

#ifndef MORALKIT_EMBEDDINGS_HPP_
#define MORALKIT_EMBEDDINGS_HPP_

#include <string>
#include <unordered_map>
#include <vector>

namespace moralkit {

// Word -> dense vector map with one fixed dimensionality.
class EmbeddingStore {
 public:
  explicit EmbeddingStore(int dim);

  int dim() const { return dim_; }
  std::size_t size() const { return vectors_.size(); }
  // Null when the word has no vector.
  const std::vector<double>* find(const std::string& word) const;
  // Replaces any existing vector; the dimensionality must match.
  void insert(const std::string& word, std::vector<double> vec);
  // Words in sorted order, for deterministic serialization.
  std::vector<std::string> sorted_words() const;

 private:
  int dim_;
  std::unordered_map<std::string, std::vector<double>> vectors_;
};

// Text format: a "count dim" header line, then one "word v1 ... vdim" row
// per line. A row whose vector width disagrees with the header is a parse
// error carrying the line number. Duplicate words keep the last vector and
// add a note to warnings.
EmbeddingStore load_embeddings(const std::string& path,
                               std::vector<std::string>* warnings = nullptr);

// Writes rows sorted by word with shortest round-trip number formatting, so
// load(save(store)) reproduces every vector bit for bit.
void save_embeddings(const EmbeddingStore& store, const std::string& path);

// Cosine similarity; by convention 0 when either vector is all zeros.
double cosine_similarity(const std::vector<double>& a,
                         const std::vector<double>& b);

}  // namespace moralkit

#endif  // MORALKIT_EMBEDDINGS_HPP_
