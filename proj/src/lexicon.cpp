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

#include "moralkit/lexicon.hpp"

#include <algorithm>
#include <filesystem>
#include <set>
#include <tuple>

#include "moralkit/csv.hpp"
#include "moralkit/error.hpp"
#include "moralkit/util.hpp"

namespace moralkit {

std::string_view trait_name(MoralTrait t) {
  switch (t) {
    case MoralTrait::Care: return "care";
    case MoralTrait::Fairness: return "fairness";
    case MoralTrait::Loyalty: return "loyalty";
    case MoralTrait::Authority: return "authority";
    case MoralTrait::Purity: return "purity";
    case MoralTrait::NonMoral: return "non-moral";
  }
  return "?";
}

MoralTrait parse_trait(std::string_view name) {
  const std::string n = to_lower_ascii(trim(name));
  for (MoralTrait t : kClassLabels) {
    if (n == trait_name(t)) return t;
  }
  throw ParseError("unknown trait: '" + std::string(name) + "'");
}

int trait_index(MoralTrait t) { return static_cast<int>(t); }

std::string_view polarity_name(Polarity p) {
  switch (p) {
    case Polarity::Virtue: return "virtue";
    case Polarity::Vice: return "vice";
    case Polarity::General: return "general";
  }
  return "?";
}

Polarity parse_polarity(std::string_view name) {
  const std::string n = to_lower_ascii(trim(name));
  if (n == "virtue") return Polarity::Virtue;
  if (n == "vice") return Polarity::Vice;
  if (n == "general") return Polarity::General;
  throw ParseError("unknown polarity: '" + std::string(name) + "'");
}

std::string_view pos_name(PartOfSpeech p) {
  switch (p) {
    case PartOfSpeech::Noun: return "n";
    case PartOfSpeech::Verb: return "v";
    case PartOfSpeech::Adjective: return "a";
    case PartOfSpeech::Adverb: return "r";
    case PartOfSpeech::Unknown: return "";
  }
  return "";
}

PartOfSpeech parse_pos(std::string_view name) {
  const std::string n = to_lower_ascii(trim(name));
  if (n == "n") return PartOfSpeech::Noun;
  if (n == "v") return PartOfSpeech::Verb;
  if (n == "a") return PartOfSpeech::Adjective;
  if (n == "r") return PartOfSpeech::Adverb;
  if (n.empty() || n == "unknown") return PartOfSpeech::Unknown;
  throw ParseError("unknown part of speech: '" + std::string(name) + "'");
}

bool StemPattern::matches(std::string_view lemma) const {
  if (wildcard) return lemma.substr(0, text.size()) == text;
  return lemma == text;
}

std::string StemPattern::spelling() const {
  return wildcard ? text + "*" : text;
}

StemPattern parse_stem_pattern(std::string_view raw) {
  std::string t = to_lower_ascii(trim(raw));
  StemPattern p;
  if (!t.empty() && t.back() == '*') {
    p.wildcard = true;
    t.pop_back();
  }
  if (t.empty()) throw ParseError("empty stem pattern");
  if (t.find('*') != std::string::npos) {
    throw ParseError("'*' is only allowed at the end of a pattern: '" +
                     std::string(raw) + "'");
  }
  if (p.wildcard && t.size() < 2) {
    throw ParseError("wildcard stem needs at least two literal characters: '" +
                     std::string(raw) + "'");
  }
  p.text = std::move(t);
  return p;
}

namespace {

bool entry_key_less(const LexiconEntry& a, const LexiconEntry& b) {
  return std::tie(a.lemma, a.pos, a.trait) < std::tie(b.lemma, b.pos, b.trait);
}

void check_score(double v, const std::string& context) {
  if (!(v >= 1.0 && v <= 9.0)) {
    throw ValidationError(context + ": score " + format_double(v) +
                          " outside [1, 9]");
  }
}

}  // namespace

Lexicon Lexicon::from_entries(std::string name,
                              std::vector<LexiconEntry> entries) {
  Lexicon lex;
  lex.name_ = std::move(name);
  for (auto& e : entries) {
    e.lemma = to_lower_ascii(e.lemma);
    if (e.lemma.empty()) throw ValidationError(lex.name_ + ": empty lemma");
    if (e.trait == MoralTrait::NonMoral) {
      throw ValidationError(lex.name_ +
                            ": non-moral is a label, not a lexicon trait");
    }
    if (e.polarity == Polarity::General) {
      throw ValidationError(lex.name_ + ": entry '" + e.lemma +
                            "' uses the general polarity, which only stem "
                            "dictionaries may carry");
    }
    check_score(e.moral_valence, lex.name_ + ": '" + e.lemma + "'");
    if (e.valence) check_score(*e.valence, lex.name_ + ": '" + e.lemma + "'");
    if (e.arousal) check_score(*e.arousal, lex.name_ + ": '" + e.lemma + "'");
  }
  std::sort(entries.begin(), entries.end(), entry_key_less);
  for (std::size_t i = 1; i < entries.size(); ++i) {
    const auto& a = entries[i - 1];
    const auto& b = entries[i];
    if (a.lemma == b.lemma && a.pos == b.pos && a.trait == b.trait) {
      throw ValidationError(lex.name_ + ": duplicate entry '" + a.lemma + "#" +
                            std::string(pos_name(a.pos)) + "' under " +
                            std::string(trait_name(a.trait)));
    }
  }
  lex.entries_ = std::move(entries);
  lex.build_indexes();
  return lex;
}

Lexicon Lexicon::from_stems(std::string name, std::vector<StemEntry> stems) {
  Lexicon lex;
  lex.name_ = std::move(name);
  std::set<std::tuple<std::string, bool, int, Polarity>> seen;
  for (const auto& s : stems) {
    if (s.trait && *s.trait == MoralTrait::NonMoral) {
      throw ValidationError(lex.name_ +
                            ": non-moral is a label, not a lexicon trait");
    }
    if (!s.trait && s.polarity != Polarity::General) {
      throw ValidationError(lex.name_ + ": stem '" + s.pattern.spelling() +
                            "' has no trait but is not general morality");
    }
    if (s.trait && s.polarity == Polarity::General) {
      throw ValidationError(lex.name_ + ": stem '" + s.pattern.spelling() +
                            "' mixes a trait with the general polarity");
    }
    auto key = std::make_tuple(s.pattern.text, s.pattern.wildcard,
                               s.trait ? trait_index(*s.trait) : -1,
                               s.polarity);
    if (!seen.insert(key).second) {
      throw ValidationError(lex.name_ + ": duplicate stem '" +
                            s.pattern.spelling() + "'");
    }
  }
  lex.stems_ = std::move(stems);
  return lex;
}

std::vector<LexiconEntry> Lexicon::entries_for(
    MoralTrait trait, std::optional<Polarity> polarity) const {
  std::vector<LexiconEntry> out;
  for (const auto& e : entries_) {
    if (e.trait != trait) continue;
    if (polarity && e.polarity != *polarity) continue;
    out.push_back(e);
  }
  // entries_ is sorted by (lemma, pos, trait), so this is already
  // (lemma, pos) sorted.
  return out;
}

void Lexicon::build_indexes() {
  std::array<std::map<std::string, std::pair<double, int>>, 5> sums;
  for (const auto& e : entries_) {
    if (e.lemma.find('_') != std::string::npos) continue;  // token-level only
    const int t = trait_index(e.trait);
    auto& acc = sums[t][e.lemma];
    acc.first += e.moral_valence;
    acc.second += 1;
    auto& poles = polarity_index_[t][e.lemma];
    if (e.polarity == Polarity::Virtue) poles.virtue = true;
    if (e.polarity == Polarity::Vice) poles.vice = true;
  }
  for (int t = 0; t < 5; ++t) {
    for (const auto& [lemma, acc] : sums[t]) {
      valence_index_[t][lemma] = acc.first / acc.second;
    }
  }
}

const std::map<std::string, double>& Lexicon::valence_index(
    MoralTrait trait) const {
  return valence_index_[trait_index(trait)];
}

const std::map<std::string, Lexicon::PoleMembership>& Lexicon::polarity_index(
    MoralTrait trait) const {
  return polarity_index_[trait_index(trait)];
}

Lexicon::PoleMembership Lexicon::stem_poles(std::string_view token,
                                            MoralTrait trait) const {
  PoleMembership out;
  for (const auto& s : stems_) {
    if (!s.trait || *s.trait != trait) continue;
    if (!s.pattern.matches(token)) continue;
    if (s.polarity == Polarity::Virtue) out.virtue = true;
    if (s.polarity == Polarity::Vice) out.vice = true;
  }
  return out;
}

namespace {

std::string line_context(const std::string& path, int line) {
  return path + ":" + std::to_string(line);
}

Lexicon load_scored(const std::string& path) {
  auto rows = read_tsv(path);
  if (rows.empty()) throw ParseError(path + ": empty lexicon file");
  const std::vector<std::string> expected_header = {
      "lemma", "pos", "trait", "polarity", "moral_valence", "valence",
      "arousal"};
  if (rows.front().second != expected_header) {
    throw ParseError(line_context(path, rows.front().first) +
                     ": bad header, expected lemma<TAB>pos<TAB>trait<TAB>"
                     "polarity<TAB>moral_valence<TAB>valence<TAB>arousal");
  }
  std::vector<LexiconEntry> entries;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& [line, f] = rows[r];
    const std::string ctx = line_context(path, line);
    if (f.size() != 7) {
      throw ParseError(ctx + ": expected 7 columns, found " +
                       std::to_string(f.size()));
    }
    LexiconEntry e;
    try {
      e.lemma = to_lower_ascii(trim(f[0]));
      e.pos = parse_pos(f[1]);
      e.trait = parse_trait(f[2]);
      e.polarity = parse_polarity(f[3]);
      e.moral_valence = parse_double(f[4], ctx);
      if (!trim(f[5]).empty()) e.valence = parse_double(f[5], ctx);
      if (!trim(f[6]).empty()) e.arousal = parse_double(f[6], ctx);
    } catch (const ParseError& err) {
      std::string msg = err.what();
      if (msg.rfind(ctx, 0) == 0) throw;
      throw ParseError(ctx + ": " + msg);
    }
    if (e.lemma.empty()) throw ParseError(ctx + ": empty lemma");
    entries.push_back(std::move(e));
  }
  try {
    return Lexicon::from_entries(
        std::filesystem::path(path).filename().string(), std::move(entries));
  } catch (const ValidationError& err) {
    throw ValidationError(path + ": " + err.what());
  }
}

Lexicon load_stem_dictionary(const std::string& path) {
  auto rows = read_tsv(path);
  if (rows.empty()) throw ParseError(path + ": empty dictionary file");
  const std::vector<std::string> expected_header = {"pattern", "trait",
                                                    "polarity"};
  if (rows.front().second != expected_header) {
    throw ParseError(line_context(path, rows.front().first) +
                     ": bad header, expected pattern<TAB>trait<TAB>polarity");
  }
  std::vector<StemEntry> stems;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& [line, f] = rows[r];
    const std::string ctx = line_context(path, line);
    if (f.size() != 3) {
      throw ParseError(ctx + ": expected 3 columns, found " +
                       std::to_string(f.size()));
    }
    StemEntry s;
    try {
      s.pattern = parse_stem_pattern(f[0]);
      const std::string trait_field = to_lower_ascii(trim(f[1]));
      if (trait_field == "general") {
        s.trait = std::nullopt;
      } else {
        s.trait = parse_trait(trait_field);
      }
      s.polarity = parse_polarity(f[2]);
    } catch (const ParseError& err) {
      throw ParseError(ctx + ": " + err.what());
    }
    stems.push_back(std::move(s));
  }
  try {
    return Lexicon::from_stems(std::filesystem::path(path).filename().string(),
                               std::move(stems));
  } catch (const ValidationError& err) {
    throw ValidationError(path + ": " + err.what());
  }
}

}  // namespace

Lexicon load_lexicon(const std::string& path, LexiconFormat format) {
  switch (format) {
    case LexiconFormat::Scored: return load_scored(path);
    case LexiconFormat::Mfd: return load_stem_dictionary(path);
  }
  throw ConfigError("unknown lexicon format");
}

void save_lexicon(const Lexicon& lex, const std::string& path) {
  std::string out;
  if (lex.stem_entries().empty()) {
    out = "lemma\tpos\ttrait\tpolarity\tmoral_valence\tvalence\tarousal\n";
    for (const auto& e : lex.entries()) {
      out += e.lemma;
      out += '\t';
      out += pos_name(e.pos);
      out += '\t';
      out += trait_name(e.trait);
      out += '\t';
      out += polarity_name(e.polarity);
      out += '\t';
      out += format_double(e.moral_valence);
      out += '\t';
      if (e.valence) out += format_double(*e.valence);
      out += '\t';
      if (e.arousal) out += format_double(*e.arousal);
      out += '\n';
    }
  } else {
    out = "pattern\ttrait\tpolarity\n";
    for (const auto& s : lex.stem_entries()) {
      out += s.pattern.spelling();
      out += '\t';
      out += s.trait ? trait_name(*s.trait) : "general";
      out += '\t';
      out += polarity_name(s.polarity);
      out += '\n';
    }
  }
  write_file_atomic(path, out);
}

std::vector<StemMatch> expand_stems(
    const std::vector<StemPattern>& patterns,
    const std::vector<std::pair<std::string, PartOfSpeech>>& inventory) {
  std::vector<StemMatch> out;
  for (const auto& p : patterns) {
    for (const auto& [lemma, pos] : inventory) {
      if (p.matches(lemma)) out.push_back({p, lemma, pos});
    }
  }
  std::sort(out.begin(), out.end(), [](const StemMatch& a, const StemMatch& b) {
    return std::tie(a.pattern.text, a.pattern.wildcard, a.lemma, a.pos) <
           std::tie(b.pattern.text, b.pattern.wildcard, b.lemma, b.pos);
  });
  return out;
}

std::vector<std::pair<std::string, PartOfSpeech>> load_inventory(
    const std::string& path) {
  const std::string text = read_file(path);
  std::vector<std::pair<std::string, PartOfSpeech>> out;
  int line_no = 0;
  for (const auto& raw_line : split(text, '\n')) {
    ++line_no;
    std::string line = trim(raw_line);
    if (line.empty()) continue;
    const auto hash = line.rfind('#');
    std::string lemma;
    PartOfSpeech pos = PartOfSpeech::Unknown;
    if (hash == std::string::npos) {
      lemma = to_lower_ascii(line);
    } else {
      lemma = to_lower_ascii(line.substr(0, hash));
      try {
        pos = parse_pos(line.substr(hash + 1));
      } catch (const ParseError& err) {
        throw ParseError(line_context(path, line_no) + ": " + err.what());
      }
    }
    if (lemma.empty()) {
      throw ParseError(line_context(path, line_no) + ": empty lemma");
    }
    out.emplace_back(std::move(lemma), pos);
  }
  return out;
}

const std::array<TraitCounts, 5>& published_census_counts() {
  static const std::array<TraitCounts, 5> kCounts = {{
      {MoralTrait::Care, 95, 85},
      {MoralTrait::Fairness, 69, 57},
      {MoralTrait::Loyalty, 99, 72},
      {MoralTrait::Authority, 160, 101},
      {MoralTrait::Purity, 97, 161},
  }};
  return kCounts;
}

std::vector<CountDiscrepancy> audit_trait_counts(const Lexicon& lex) {
  std::vector<CountDiscrepancy> out;
  for (const auto& ref : published_census_counts()) {
    const int virtue =
        static_cast<int>(lex.entries_for(ref.trait, Polarity::Virtue).size());
    const int vice =
        static_cast<int>(lex.entries_for(ref.trait, Polarity::Vice).size());
    if (virtue != ref.virtue) {
      out.push_back({ref.trait, Polarity::Virtue, ref.virtue, virtue});
    }
    if (vice != ref.vice) {
      out.push_back({ref.trait, Polarity::Vice, ref.vice, vice});
    }
  }
  return out;
}

}  // namespace moralkit
