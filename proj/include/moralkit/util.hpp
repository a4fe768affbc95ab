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

#ifndef MORALKIT_UTIL_HPP_
#define MORALKIT_UTIL_HPP_

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace moralkit {

// 64-bit FNV-1a. Used for run manifests and sub-seed derivation.
std::uint64_t fnv1a64(std::string_view bytes);
std::uint64_t fnv1a64_file(const std::string& path);

// Derives an independent stream seed from a master seed and a label, so each
// randomized stage of a run (fold split, per-fold sampling, ...) draws from
// its own reproducible stream.
std::uint64_t sub_seed(std::uint64_t master, std::string_view label);

// Deterministic RNG. mt19937_64 has a portable sequence; the bounded draw
// avoids std::uniform_int_distribution, whose mapping is
// implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t next() { return eng_(); }
  // Uniform in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);
  // Uniform in [0, 1).
  double unit();

 private:
  std::mt19937_64 eng_;
};

// Fisher-Yates with the portable bounded draw above.
template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng.below(i));
    std::swap(v[i - 1], v[j]);
  }
}

std::string to_lower_ascii(std::string_view s);
std::string trim(std::string_view s);
// Splits on a separator, keeping empty fields.
std::vector<std::string> split(std::string_view s, char sep);

// Shortest decimal form that parses back to the same double.
std::string format_double(double v);
// Strict double parse; context goes into the error message.
double parse_double(std::string_view s, const std::string& context);
// Strict non-negative integer parse.
long parse_long(std::string_view s, const std::string& context);

std::string read_file(const std::string& path);
// Writes via a temp file plus rename so readers never see partial output.
void write_file_atomic(const std::string& path, std::string_view content);

}  // namespace moralkit

#endif  // MORALKIT_UTIL_HPP_
