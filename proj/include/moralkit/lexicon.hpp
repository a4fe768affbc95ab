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

#ifndef MORALKIT_LEXICON_HPP_
#define MORALKIT_LEXICON_HPP_

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace moralkit {

// The five moral foundations, plus NonMoral. NonMoral exists only as a
// classification label; lexicon loaders reject it as an entry trait.
enum class MoralTrait {
  Care,
  Fairness,
  Loyalty,
  Authority,
  Purity,
  NonMoral,
};

// Traits a lexicon entry may carry, in canonical order.
inline constexpr std::array<MoralTrait, 5> kLexiconTraits = {
    MoralTrait::Care, MoralTrait::Fairness, MoralTrait::Loyalty,
    MoralTrait::Authority, MoralTrait::Purity};

// All classification labels, in canonical order.
inline constexpr std::array<MoralTrait, 6> kClassLabels = {
    MoralTrait::Care,      MoralTrait::Fairness, MoralTrait::Loyalty,
    MoralTrait::Authority, MoralTrait::Purity,   MoralTrait::NonMoral};

std::string_view trait_name(MoralTrait t);
// Case-insensitive. Throws ParseError on unknown names.
MoralTrait parse_trait(std::string_view name);
// 0..4 for lexicon traits, 5 for NonMoral.
int trait_index(MoralTrait t);

// General marks dictionary entries tied to morality as a whole rather than a
// single foundation. Only stem-dictionary entries may carry it.
enum class Polarity { Virtue, Vice, General };

std::string_view polarity_name(Polarity p);
Polarity parse_polarity(std::string_view name);

enum class PartOfSpeech { Noun, Verb, Adjective, Adverb, Unknown };

// Single letters n/v/a/r; Unknown serializes as the empty string.
std::string_view pos_name(PartOfSpeech p);
PartOfSpeech parse_pos(std::string_view name);

// One scored lexicon row. moral_valence runs on a 1..9 scale where 5 is
// neutral, below 5 leans vice and above 5 leans virtue.
struct LexiconEntry {
  std::string lemma;  // lowercase; multi-word lemmas join words with '_'
  PartOfSpeech pos = PartOfSpeech::Unknown;
  MoralTrait trait = MoralTrait::Care;
  Polarity polarity = Polarity::Virtue;
  double moral_valence = 5.0;
  std::optional<double> valence;
  std::optional<double> arousal;

  bool operator==(const LexiconEntry&) const = default;
};

// A dictionary stem: either an exact lemma or a prefix wildcard written with
// a trailing '*'. Wildcards keep at least two literal characters.
struct StemPattern {
  std::string text;  // literal part, lowercase, without the star
  bool wildcard = false;

  bool matches(std::string_view lemma) const;
  std::string spelling() const;  // text plus the star when wildcard

  bool operator==(const StemPattern&) const = default;
};

// Validates and lowercases a raw pattern spelling.
StemPattern parse_stem_pattern(std::string_view raw);

// One stem-dictionary row. General-morality rows carry no trait.
struct StemEntry {
  StemPattern pattern;
  std::optional<MoralTrait> trait;
  Polarity polarity = Polarity::Virtue;

  bool operator==(const StemEntry&) const = default;
};

enum class LexiconFormat { Scored, Mfd };

// An immutable word resource. A lexicon loaded from the scored TSV format
// holds entries(); one loaded from the stem dictionary format holds
// stem_entries(). All retrieval orders are deterministic.
class Lexicon {
 public:
  Lexicon() = default;

  static Lexicon from_entries(std::string name, std::vector<LexiconEntry> entries);
  static Lexicon from_stems(std::string name, std::vector<StemEntry> stems);

  const std::string& name() const { return name_; }
  // Sorted by (lemma, pos, trait).
  const std::vector<LexiconEntry>& entries() const { return entries_; }
  // In file order.
  const std::vector<StemEntry>& stem_entries() const { return stems_; }

  // Entries of one trait, optionally restricted to one polarity, sorted by
  // (lemma, pos).
  std::vector<LexiconEntry> entries_for(
      MoralTrait trait, std::optional<Polarity> polarity = {}) const;

  // Token-level view used by feature extraction: lemma -> mean moral_valence
  // for one trait. Multi-word lemmas are omitted; a lemma listed under
  // several parts of speech contributes the mean of its scores.
  const std::map<std::string, double>& valence_index(MoralTrait trait) const;

  // Token-level polarity membership for one trait. A lemma may sit on both
  // poles when different parts of speech disagree.
  struct PoleMembership {
    bool virtue = false;
    bool vice = false;
  };
  const std::map<std::string, PoleMembership>& polarity_index(
      MoralTrait trait) const;

  // Pole membership of a token under the stem dictionary for one trait.
  // General-morality stems never match here.
  PoleMembership stem_poles(std::string_view token, MoralTrait trait) const;

 private:
  std::string name_;
  std::vector<LexiconEntry> entries_;
  std::vector<StemEntry> stems_;
  std::array<std::map<std::string, double>, 5> valence_index_;
  std::array<std::map<std::string, PoleMembership>, 5> polarity_index_;

  void build_indexes();
};

// Loads a lexicon file. The scored format is a TSV with header
//   lemma<TAB>pos<TAB>trait<TAB>polarity<TAB>moral_valence<TAB>valence<TAB>arousal
// where the last two columns may be empty. The stem dictionary format is a
// TSV with header pattern<TAB>trait<TAB>polarity; general-morality rows spell
// both the trait and polarity columns as "general". Scores outside [1, 9],
// duplicate keys, and NonMoral rows are rejected; parse errors carry
// file:line context.
Lexicon load_lexicon(const std::string& path, LexiconFormat format);

// Inverse of load_lexicon for the matching format; loading the result yields
// an identical lexicon.
void save_lexicon(const Lexicon& lex, const std::string& path);

// One candidate produced by stem expansion.
struct StemMatch {
  StemPattern pattern;
  std::string lemma;
  PartOfSpeech pos = PartOfSpeech::Unknown;
};

// Expands stems over a lemma inventory: a wildcard matches every inventory
// lemma it literally prefixes, an exact pattern matches only equal lemmas.
// Output is sorted by (pattern, lemma, pos). Over-generation (e.g. an
// agent-noun caught by a shorter stem) is deliberate: candidates exist to be
// reviewed, not trusted.
std::vector<StemMatch> expand_stems(
    const std::vector<StemPattern>& patterns,
    const std::vector<std::pair<std::string, PartOfSpeech>>& inventory);

// One lemma#pos per line. Lines without '#' get PartOfSpeech::Unknown.
std::vector<std::pair<std::string, PartOfSpeech>> load_inventory(
    const std::string& path);

// Published per-trait (virtue, vice) entry counts of the released
// scored lexicon, used as the audit reference.
struct TraitCounts {
  MoralTrait trait;
  int virtue = 0;
  int vice = 0;
};
const std::array<TraitCounts, 5>& published_census_counts();

struct CountDiscrepancy {
  MoralTrait trait;
  Polarity polarity = Polarity::Virtue;
  int expected = 0;
  int actual = 0;
};

// Compares a lexicon's per-trait polarity counts against the published
// reference. An empty result means the counts match exactly; any mismatch is
// returned, never swallowed.
std::vector<CountDiscrepancy> audit_trait_counts(const Lexicon& lex);

}  // namespace moralkit

#endif  // MORALKIT_LEXICON_HPP_
