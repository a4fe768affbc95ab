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

#include "support/fixtures.hpp"

#include <cstdlib>
#include <filesystem>
#include <stdexcept>

#include "moralkit/lexicon.hpp"
#include "moralkit/util.hpp"

namespace testsupport {

namespace fs = std::filesystem;

TempDir::TempDir() {
  std::string tmpl =
      (fs::temp_directory_path() / "moralkit_test_XXXXXX").string();
  if (!mkdtemp(tmpl.data())) {
    throw std::runtime_error("mkdtemp failed for " + tmpl);
  }
  path_ = tmpl;
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);  // best effort
}

std::string TempDir::file(const std::string& name) const {
  return (fs::path(path_) / name).string();
}

std::string data_path(const std::string& name) {
  return std::string(MORALKIT_DATA_DIR) + "/" + name;
}

namespace {

const char* kTraitPrefix[5] = {"car", "fai", "loy", "aut", "pur"};
const char* kPosCycle[4] = {"n", "v", "a", "r"};

// Unique synthetic lemma: trait prefix, pole letter, two index letters.
std::string synth_lemma(int trait, bool virtue, int i) {
  std::string s = kTraitPrefix[trait];
  s += virtue ? 'v' : 'x';
  s += static_cast<char>('a' + (i / 26) % 26);
  s += static_cast<char>('a' + i % 26);
  return s;
}

void append_scored_row(std::string& out, const std::string& lemma,
                       const char* pos, const char* trait, bool virtue,
                       double moral_valence, int i) {
  out += lemma;
  out += '\t';
  out += pos;
  out += '\t';
  out += trait;
  out += '\t';
  out += virtue ? "virtue" : "vice";
  out += '\t';
  out += moralkit::format_double(moral_valence);
  out += '\t';
  // Every third row leaves the affective columns empty.
  if (i % 3 != 0) {
    out += moralkit::format_double(3.0 + (i % 50) * 0.1);
    out += '\t';
    out += moralkit::format_double(2.0 + (i % 60) * 0.1);
  } else {
    out += '\t';
  }
  out += '\n';
}

}  // namespace

std::string write_full_lexicon(const TempDir& dir) {
  std::string out =
      "lemma\tpos\ttrait\tpolarity\tmoral_valence\tvalence\tarousal\n";
  const auto& ref = moralkit::published_census_counts();
  int i = 0;
  for (int t = 0; t < 5; ++t) {
    const char* tname = moralkit::trait_name(ref[t].trait).data();
    for (int v = 0; v < ref[t].virtue; ++v, ++i) {
      append_scored_row(out, synth_lemma(t, true, v), kPosCycle[i % 4], tname,
                        true, 5.5 + (i % 35) * 0.1, i);
    }
    for (int v = 0; v < ref[t].vice; ++v, ++i) {
      append_scored_row(out, synth_lemma(t, false, v), kPosCycle[i % 4], tname,
                        false, 4.5 - (i % 35) * 0.1, i);
    }
  }
  const std::string path = dir.file("full_lexicon.tsv");
  moralkit::write_file_atomic(path, out);
  return path;
}

const std::array<PlantedWords, 5>& planted_words() {
  static const std::array<PlantedWords, 5> words = {{
      {"care",
       {"shelter", "protect", "comfort", "nurse"},
       {"kill", "wound", "ravage", "torment"}},
      {"fairness",
       {"equity", "impartial", "honesty", "justice"},
       {"cheat", "bias", "swindle", "rig"}},
      {"loyalty",
       {"ally", "devotion", "comrade", "unity"},
       {"betray", "desert", "traitor", "defect"}},
      {"authority",
       {"obey", "order", "duty", "command"},
       {"rebel", "defy", "chaos", "mutiny"}},
      {"purity",
       {"sacred", "pristine", "chaste", "holy"},
       {"filth", "taint", "degrade", "defile"}},
  }};
  return words;
}

std::string write_planted_lexicon(const TempDir& dir) {
  std::string out =
      "lemma\tpos\ttrait\tpolarity\tmoral_valence\tvalence\tarousal\n";
  int i = 0;
  for (const auto& pw : planted_words()) {
    for (const char* w : pw.virtues) {
      out += std::string(w) + "\tn\t" + pw.trait + "\tvirtue\t" +
             moralkit::format_double(8.0 + (i % 5) * 0.2) + "\t\t\n";
      ++i;
    }
    for (const char* w : pw.vices) {
      out += std::string(w) + "\tn\t" + pw.trait + "\tvice\t" +
             moralkit::format_double(2.0 - (i % 5) * 0.2) + "\t\t\n";
      ++i;
    }
  }
  const std::string path = dir.file("planted_lexicon.tsv");
  moralkit::write_file_atomic(path, out);
  return path;
}

std::string write_weak_mfd(const TempDir& dir) {
  // Covers one pole word per trait and pole, plus stems that fire on the
  // filler vocabulary (march, report, street, crowd, video) in every class.
  const std::string out =
      "pattern\ttrait\tpolarity\n"
      "shelt*\tcare\tvirtue\n"
      "kill*\tcare\tvice\n"
      "equit*\tfairness\tvirtue\n"
      "cheat*\tfairness\tvice\n"
      "ally\tloyalty\tvirtue\n"
      "betray*\tloyalty\tvice\n"
      "obey*\tauthority\tvirtue\n"
      "rebel*\tauthority\tvice\n"
      "sacred\tpurity\tvirtue\n"
      "filth*\tpurity\tvice\n"
      "marc*\tcare\tvirtue\n"
      "repor*\tauthority\tvirtue\n"
      "stree*\tpurity\tvice\n"
      "crow*\tfairness\tvice\n"
      "vide*\tgeneral\tgeneral\n";
  const std::string path = dir.file("weak_mfd.tsv");
  moralkit::write_file_atomic(path, out);
  return path;
}

std::string write_planted_corpus(const TempDir& dir, int n_docs,
                                 std::uint64_t seed) {
  static const char* kFiller[] = {
      "the",     "of",      "and",     "to",      "in",      "a",
      "march",   "crowd",   "city",    "report",  "video",   "street",
      "today",   "people",  "group",   "meeting", "news",    "local",
      "morning", "evening", "summer",  "winter",  "school",  "music",
      "game",    "coffee",  "train",   "office",  "market",  "garden",
      "river",   "bridge",  "window",  "letter",  "phone",   "travel",
      "dinner",  "weather", "picture", "story",   "friend",  "family",
      "weekend", "project", "ticket",  "museum",  "library", "corner",
      "morningo", "eveningo"};
  const int n_filler = static_cast<int>(sizeof(kFiller) / sizeof(kFiller[0]));

  moralkit::Rng rng(seed);
  const auto& planted = planted_words();

  std::string out;
  for (int d = 0; d < n_docs; ++d) {
    const bool moral = d % 12 >= 5;  // 7 of 12 documents carry a trait
    std::vector<std::string> tokens;
    const int fill = 8 + static_cast<int>(rng.below(7));
    for (int i = 0; i < fill; ++i) {
      tokens.push_back(kFiller[rng.below(n_filler)]);
    }

    std::string labels;
    if (moral) {
      const int primary = d % 5;
      int traits[2] = {primary, -1};
      if (d % 10 == 9) traits[1] = (primary + 1) % 5;
      for (int slot = 0; slot < 2; ++slot) {
        const int t = traits[slot];
        if (t < 0) continue;
        if (!labels.empty()) labels += "\",\"";
        labels += planted[t].trait;
        const auto& pole_words =
            rng.below(2) == 0 ? planted[t].virtues : planted[t].vices;
        const int n_plant = 2 + static_cast<int>(rng.below(3));
        for (int i = 0; i < n_plant; ++i) {
          tokens.push_back(pole_words[rng.below(4)]);
        }
      }
    } else {
      labels = "non-moral";
    }

    // Planted words sit at positions mixed through the filler.
    moralkit::shuffle(tokens, rng);
    std::string text;
    for (const auto& tok : tokens) {
      if (!text.empty()) text += ' ';
      text += tok;
    }
    out += "{\"id\":\"d" + std::to_string(d) + "\",\"text\":\"" + text +
           "\",\"labels\":[\"" + labels + "\"]}\n";
  }
  const std::string path = dir.file("planted_corpus.jsonl");
  moralkit::write_file_atomic(path, out);
  return path;
}

}  // namespace testsupport
