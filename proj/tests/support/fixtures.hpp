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

#ifndef MORALKIT_TESTS_SUPPORT_FIXTURES_HPP_
#define MORALKIT_TESTS_SUPPORT_FIXTURES_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace testsupport {

// Self-deleting unique directory under the system temp root.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::string& path() const { return path_; }
  // Joins a relative name onto the directory.
  std::string file(const std::string& name) const;

 private:
  std::string path_;
};

// Repository data file shipped with the sources.
std::string data_path(const std::string& name);

// Full-size scored lexicon whose per-trait polarity counts equal the
// published reference exactly (996 rows of synthetic lemmas). Returns the
// written path.
std::string write_full_lexicon(const TempDir& dir);

// The planted vocabulary behind the synthetic evaluation corpus: per trait,
// four clearly virtuous and four clearly vicious words.
struct PlantedWords {
  const char* trait;
  std::array<const char*, 4> virtues;
  std::array<const char*, 4> vices;
};
const std::array<PlantedWords, 5>& planted_words();

// Scored lexicon holding exactly the planted words with extreme valences.
std::string write_planted_lexicon(const TempDir& dir);

// Stem dictionary that covers only one virtue and one vice word per trait
// and adds stems firing on neutral filler words, so dictionary matching
// separates the corpus much worse than the scored lexicon does.
std::string write_weak_mfd(const TempDir& dir);

// Labeled JSONL corpus of n_docs documents: roughly 5/12 non-moral filler
// documents, the rest carrying one (sometimes two) trait labels realized by
// planted words mixed into filler text.
std::string write_planted_corpus(const TempDir& dir, int n_docs,
                                 std::uint64_t seed);

}  // namespace testsupport

#endif  // MORALKIT_TESTS_SUPPORT_FIXTURES_HPP_
