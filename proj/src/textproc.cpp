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

#include "moralkit/textproc.hpp"

#include <algorithm>
#include <map>
#include <regex>

#include "moralkit/error.hpp"
#include "moralkit/util.hpp"

namespace moralkit {

namespace {

// Control-byte sentinels keep placeholder tokens safe from the
// punctuation-collapse pass.
constexpr char kUrl = '\x01';
constexpr char kUser = '\x02';
constexpr char kNumber = '\x03';
constexpr char kHashtag = '\x04';

void replace_all(std::string& s, std::string_view from, std::string_view to) {
  std::size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
}

void append_token(std::string& out, std::string_view token) {
  if (!out.empty() && out.back() != ' ') out += ' ';
  out += token;
  out += ' ';
}

}  // namespace

std::string normalize_tweet(std::string_view raw) {
  std::string s(raw);

  // Protect placeholders from earlier passes so normalization is idempotent.
  replace_all(s, "<url>", std::string(1, kUrl));
  replace_all(s, "<username>", std::string(1, kUser));
  replace_all(s, "<number>", std::string(1, kNumber));
  replace_all(s, "<hashtag>", std::string(1, kHashtag));

  // URLs first: they contain digits and punctuation the later passes eat.
  static const std::regex url_re(R"((https?://\S+|www\.\S+|\bt\.co/\S+))",
                                 std::regex::icase);
  s = std::regex_replace(s, url_re, std::string(1, kUrl));
  static const std::regex user_re(R"(@\w+)");
  s = std::regex_replace(s, user_re, std::string(1, kUser));
  static const std::regex hash_re(R"(#(\w+))");
  s = std::regex_replace(s, hash_re, std::string(1, kHashtag) + " $1");
  static const std::regex num_re("[0-9]+");
  s = std::regex_replace(s, num_re, std::string(1, kNumber));

  // Lowercase, restore placeholders as standalone tokens, and collapse
  // everything that is not an ASCII letter or digit.
  std::string out;
  out.reserve(s.size() + 8);
  for (char c : s) {
    switch (c) {
      case kUrl: append_token(out, "<url>"); break;
      case kUser: append_token(out, "<username>"); break;
      case kNumber: append_token(out, "<number>"); break;
      case kHashtag: append_token(out, "<hashtag>"); break;
      default:
        if (c >= 'A' && c <= 'Z') {
          out += static_cast<char>(c - 'A' + 'a');
        } else if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) {
          out += c;
        } else if (out.empty() || out.back() != ' ') {
          out += ' ';
        }
        break;
    }
  }

  // Collapse space runs and trim.
  std::string result;
  result.reserve(out.size());
  for (char c : out) {
    if (c == ' ' && (result.empty() || result.back() == ' ')) continue;
    result += c;
  }
  while (!result.empty() && result.back() == ' ') result.pop_back();
  return result;
}

std::vector<std::string> tokenize(std::string_view normalized) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < normalized.size()) {
    while (i < normalized.size() &&
           std::isspace(static_cast<unsigned char>(normalized[i]))) {
      ++i;
    }
    std::size_t start = i;
    while (i < normalized.size() &&
           !std::isspace(static_cast<unsigned char>(normalized[i]))) {
      ++i;
    }
    if (i > start) out.emplace_back(normalized.substr(start, i - start));
  }
  return out;
}

Document make_document(std::string id, std::string_view raw,
                       std::set<MoralTrait> labels) {
  if (labels.count(MoralTrait::NonMoral) && labels.size() > 1) {
    throw ValidationError("document '" + id +
                          "': non-moral cannot be combined with moral labels");
  }
  Document d;
  d.id = std::move(id);
  d.raw_text = std::string(raw);
  d.normalized_text = normalize_tweet(raw);
  d.tokens = tokenize(d.normalized_text);
  d.labels = std::move(labels);
  return d;
}

Vocabulary::Vocabulary() : tokens_(std::make_shared<FeatureNames>()) {}

Vocabulary::Vocabulary(std::vector<std::string> ordered_tokens) {
  auto owned = std::make_shared<FeatureNames>(std::move(ordered_tokens));
  for (std::size_t i = 0; i < owned->size(); ++i) {
    auto [it, fresh] = index_.emplace((*owned)[i], static_cast<int>(i));
    if (!fresh) {
      throw ValidationError("vocabulary has duplicate token '" + (*owned)[i] +
                            "'");
    }
  }
  tokens_ = std::move(owned);
}

std::optional<int> Vocabulary::index_of(const std::string& token) const {
  auto it = index_.find(token);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Vocabulary build_vocab(const std::vector<const Document*>& docs,
                       int min_count) {
  if (min_count < 1) throw ConfigError("min_count must be at least 1");
  std::map<std::string, long> freq;
  for (const Document* d : docs) {
    for (const auto& t : d->tokens) ++freq[t];
  }
  std::vector<std::pair<std::string, long>> kept;
  for (auto& [tok, n] : freq) {
    if (n >= min_count) kept.emplace_back(tok, n);
  }
  std::stable_sort(kept.begin(), kept.end(),
                   [](const auto& a, const auto& b) {
                     if (a.second != b.second) return a.second > b.second;
                     return a.first < b.first;
                   });
  std::vector<std::string> ordered;
  ordered.reserve(kept.size());
  for (auto& [tok, n] : kept) ordered.push_back(tok);
  return Vocabulary(std::move(ordered));
}

Vocabulary build_vocab(const std::vector<Document>& docs, int min_count) {
  std::vector<const Document*> ptrs;
  ptrs.reserve(docs.size());
  for (const auto& d : docs) ptrs.push_back(&d);
  return build_vocab(ptrs, min_count);
}

FeatureVector unigram_features(const std::vector<std::string>& tokens,
                               const Vocabulary& vocab) {
  FeatureVector fv;
  fv.name = "unigrams";
  fv.schema = vocab.schema();
  fv.values.assign(vocab.size(), 0.0);
  for (const auto& t : tokens) {
    if (auto idx = vocab.index_of(t)) fv.values[*idx] += 1.0;
  }
  return fv;
}

}  // namespace moralkit
