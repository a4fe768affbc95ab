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

#include "moralkit/embeddings.hpp"

#include <algorithm>
#include <cmath>

#include "moralkit/error.hpp"
#include "moralkit/util.hpp"

namespace moralkit {

EmbeddingStore::EmbeddingStore(int dim) : dim_(dim) {
  if (dim_ < 1) throw ValidationError("embedding dimension must be positive");
}

const std::vector<double>* EmbeddingStore::find(const std::string& word) const {
  auto it = vectors_.find(word);
  return it == vectors_.end() ? nullptr : &it->second;
}

void EmbeddingStore::insert(const std::string& word,
                            std::vector<double> vec) {
  if (static_cast<int>(vec.size()) != dim_) {
    throw ValidationError("vector for '" + word + "' has " +
                          std::to_string(vec.size()) + " components, store "
                          "holds " + std::to_string(dim_));
  }
  vectors_[word] = std::move(vec);
}

std::vector<std::string> EmbeddingStore::sorted_words() const {
  std::vector<std::string> words;
  words.reserve(vectors_.size());
  for (const auto& [w, v] : vectors_) words.push_back(w);
  std::sort(words.begin(), words.end());
  return words;
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

}  // namespace

EmbeddingStore load_embeddings(const std::string& path,
                               std::vector<std::string>* warnings) {
  const std::string text = read_file(path);
  const auto lines = split(text, '\n');
  std::size_t line_idx = 0;
  // Skip leading blank lines defensively; the header must come first.
  while (line_idx < lines.size() && trim(lines[line_idx]).empty()) ++line_idx;
  if (line_idx == lines.size()) throw ParseError(path + ": empty file");

  const std::string header_ctx = path + ":" + std::to_string(line_idx + 1);
  const auto header = split_ws(lines[line_idx]);
  if (header.size() != 2) {
    throw ParseError(header_ctx + ": expected 'count dim' header");
  }
  const long declared = parse_long(header[0], header_ctx);
  const long dim = parse_long(header[1], header_ctx);
  if (dim < 1) throw ParseError(header_ctx + ": dimension must be positive");
  (void)declared;  // informative only; rows are parsed to EOF

  EmbeddingStore store(static_cast<int>(dim));
  for (std::size_t i = line_idx + 1; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    const std::string ctx = path + ":" + std::to_string(i + 1);
    const auto fields = split_ws(lines[i]);
    if (static_cast<long>(fields.size()) != dim + 1) {
      throw ParseError(ctx + ": expected " + std::to_string(dim) +
                       " components, found " +
                       std::to_string(fields.size() - 1));
    }
    const std::string word(fields[0]);
    std::vector<double> vec(dim);
    for (long d = 0; d < dim; ++d) {
      vec[d] = parse_double(fields[d + 1], ctx);
    }
    if (store.find(word) && warnings) {
      warnings->push_back(ctx + ": duplicate vector for '" + word +
                          "', keeping the last");
    }
    store.insert(word, std::move(vec));
  }
  return store;
}

void save_embeddings(const EmbeddingStore& store, const std::string& path) {
  std::string out = std::to_string(store.size()) + " " +
                    std::to_string(store.dim()) + "\n";
  for (const auto& word : store.sorted_words()) {
    out += word;
    for (double v : *store.find(word)) {
      out += ' ';
      out += format_double(v);
    }
    out += '\n';
  }
  write_file_atomic(path, out);
}

double cosine_similarity(const std::vector<double>& a,
                         const std::vector<double>& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("cosine: dimension mismatch");
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace moralkit
