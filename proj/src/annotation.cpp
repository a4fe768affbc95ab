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

#include "moralkit/annotation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <tuple>

#include "moralkit/csv.hpp"
#include "moralkit/error.hpp"
#include "moralkit/util.hpp"

namespace moralkit {

namespace {

void check_scale(double v, const std::string& context) {
  if (!(v >= 1.0 && v <= 9.0)) {
    throw ValidationError(context + ": score " + format_double(v) +
                          " outside [1, 9]");
  }
}

bool parse_bool(const std::string& raw, const std::string& context) {
  const std::string v = to_lower_ascii(trim(raw));
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ParseError(context + ": not a boolean: '" + raw + "'");
}

}  // namespace

std::vector<RatingRecord> load_ratings(const std::string& path) {
  auto rows = read_csv(path);
  if (rows.empty()) throw ParseError(path + ": empty ratings file");
  const std::vector<std::string> header = {
      "annotator_id", "word", "trait", "relevant",
      "valence",      "arousal", "moral_valence"};
  if (rows.front() != header) {
    throw ParseError(path + ": bad header, expected annotator_id,word,trait,"
                            "relevant,valence,arousal,moral_valence");
  }
  std::vector<RatingRecord> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const std::string ctx = path + ": row " + std::to_string(r + 1);
    const auto& f = rows[r];
    if (f.size() != 7) {
      throw ParseError(ctx + ": expected 7 fields, found " +
                       std::to_string(f.size()));
    }
    RatingRecord rec;
    rec.annotator_id = trim(f[0]);
    rec.word = to_lower_ascii(trim(f[1]));
    rec.trait = parse_trait(f[2]);
    rec.relevant = parse_bool(f[3], ctx);
    if (rec.annotator_id.empty()) throw ParseError(ctx + ": empty annotator id");
    if (rec.word.empty()) throw ParseError(ctx + ": empty word");
    const bool has_scores =
        !trim(f[4]).empty() || !trim(f[5]).empty() || !trim(f[6]).empty();
    if (rec.relevant) {
      rec.valence = parse_double(f[4], ctx);
      rec.arousal = parse_double(f[5], ctx);
      rec.moral_valence = parse_double(f[6], ctx);
      check_scale(*rec.valence, ctx);
      check_scale(*rec.arousal, ctx);
      check_scale(*rec.moral_valence, ctx);
    } else if (has_scores) {
      throw ValidationError(ctx + ": an irrelevant answer carries no scores");
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<GoldWord> load_golds(const std::string& path) {
  auto rows = read_csv(path);
  if (rows.empty()) throw ParseError(path + ": empty gold file");
  if (rows.front() != std::vector<std::string>{"word", "gold_mean", "gold_sd"}) {
    throw ParseError(path + ": bad header, expected word,gold_mean,gold_sd");
  }
  std::vector<GoldWord> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const std::string ctx = path + ": row " + std::to_string(r + 1);
    const auto& f = rows[r];
    if (f.size() != 3) {
      throw ParseError(ctx + ": expected 3 fields, found " +
                       std::to_string(f.size()));
    }
    GoldWord g;
    g.word = to_lower_ascii(trim(f[0]));
    g.mean = parse_double(f[1], ctx);
    g.sd = parse_double(f[2], ctx);
    if (g.word.empty()) throw ParseError(ctx + ": empty word");
    if (!(g.sd > 0.0)) {
      throw ValidationError(ctx + ": gold standard deviation must be positive");
    }
    out.push_back(std::move(g));
  }
  return out;
}

AnnotatorVerdict validate_annotator(const std::vector<RatingRecord>& records,
                                    const std::vector<GoldWord>& golds) {
  std::map<std::string, const GoldWord*> by_word;
  for (const auto& g : golds) by_word[g.word] = &g;

  AnnotatorVerdict v;
  for (const auto& r : records) {
    auto it = by_word.find(r.word);
    if (it == by_word.end()) continue;
    if (!r.valence) continue;  // irrelevant answers carry nothing to check
    ++v.golds_seen;
    const GoldWord& g = *it->second;
    if (std::abs(*r.valence - g.mean) > 1.5 * g.sd) ++v.failed_golds;
  }
  if (v.golds_seen == 0) {
    throw ValidationError("annotator scored no control words");
  }
  v.accepted = v.failed_golds <= 1;
  return v;
}

std::vector<AggregatedRating> aggregate_ratings(
    const std::vector<RatingRecord>& records, int min_raters) {
  if (min_raters < 1) throw ConfigError("min_raters must be at least 1");
  struct Acc {
    int n = 0;
    double mv = 0, val = 0, aro = 0, mv_sq = 0;
  };
  std::map<std::pair<std::string, int>, Acc> groups;
  for (const auto& r : records) {
    if (!r.relevant || !r.moral_valence) continue;
    auto& a = groups[{r.word, trait_index(r.trait)}];
    ++a.n;
    a.mv += *r.moral_valence;
    a.mv_sq += *r.moral_valence * *r.moral_valence;
    a.val += r.valence.value_or(0.0);
    a.aro += r.arousal.value_or(0.0);
  }
  std::vector<AggregatedRating> out;
  for (const auto& [key, a] : groups) {
    AggregatedRating agg;
    agg.word = key.first;
    agg.trait = static_cast<MoralTrait>(key.second);
    agg.n_raters = a.n;
    agg.mean_moral_valence = a.mv / a.n;
    const double var =
        std::max(0.0, a.mv_sq / a.n - agg.mean_moral_valence *
                                          agg.mean_moral_valence);
    agg.sd_moral_valence = std::sqrt(var);
    agg.mean_valence = a.val / a.n;
    agg.mean_arousal = a.aro / a.n;
    agg.under_min = a.n < min_raters;
    out.push_back(std::move(agg));
  }
  return out;  // std::map ordering: sorted by (word, trait)
}

RatingsMatrix::RatingsMatrix(std::vector<std::string> words,
                             std::vector<std::string> annotators,
                             std::vector<std::optional<double>> cells)
    : words_(std::move(words)),
      annotators_(std::move(annotators)),
      cells_(std::move(cells)) {
  if (cells_.size() != words_.size() * annotators_.size()) {
    throw ValidationError("ratings matrix shape mismatch");
  }
}

RatingsMatrix RatingsMatrix::from_records(
    const std::vector<RatingRecord>& records, MoralTrait trait) {
  std::set<std::string> word_set, annot_set;
  for (const auto& r : records) {
    if (r.trait != trait) continue;
    word_set.insert(r.word);
    annot_set.insert(r.annotator_id);
  }
  std::vector<std::string> words(word_set.begin(), word_set.end());
  std::vector<std::string> annotators(annot_set.begin(), annot_set.end());
  std::map<std::string, std::size_t> wi, ai;
  for (std::size_t i = 0; i < words.size(); ++i) wi[words[i]] = i;
  for (std::size_t i = 0; i < annotators.size(); ++i) ai[annotators[i]] = i;

  std::vector<std::optional<double>> cells(words.size() * annotators.size());
  for (const auto& r : records) {
    if (r.trait != trait || !r.relevant || !r.moral_valence) continue;
    auto& cell = cells[wi[r.word] * annotators.size() + ai[r.annotator_id]];
    if (cell) {
      throw ValidationError("duplicate answer for word '" + r.word +
                            "' by annotator '" + r.annotator_id + "'");
    }
    cell = *r.moral_valence;
  }
  return RatingsMatrix(std::move(words), std::move(annotators),
                       std::move(cells));
}

const std::optional<double>& RatingsMatrix::cell(std::size_t word,
                                                 std::size_t annotator) const {
  return cells_.at(word * annotators_.size() + annotator);
}

RatingsMatrix RatingsMatrix::without_annotators(
    const std::vector<std::string>& ids) const {
  std::set<std::string> drop(ids.begin(), ids.end());
  for (const auto& id : drop) {
    if (std::find(annotators_.begin(), annotators_.end(), id) ==
        annotators_.end()) {
      throw ValidationError("unknown annotator id: '" + id + "'");
    }
  }
  std::vector<std::string> kept;
  std::vector<std::size_t> kept_idx;
  for (std::size_t j = 0; j < annotators_.size(); ++j) {
    if (!drop.count(annotators_[j])) {
      kept.push_back(annotators_[j]);
      kept_idx.push_back(j);
    }
  }
  std::vector<std::optional<double>> cells;
  cells.reserve(words_.size() * kept.size());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    for (std::size_t j : kept_idx) cells.push_back(cell(i, j));
  }
  return RatingsMatrix(words_, std::move(kept), std::move(cells));
}

double gwet_ac2(const RatingsMatrix& matrix, int n_categories) {
  if (n_categories < 2) throw MetricError("need at least two categories");
  if (matrix.word_count() < 2) {
    throw MetricError("agreement needs at least two words");
  }
  const int K = n_categories;

  // Per-word category counts, words with fewer than two answers excluded.
  std::vector<std::vector<int>> counts;
  for (std::size_t i = 0; i < matrix.word_count(); ++i) {
    std::vector<int> row(K, 0);
    int n_answers = 0;
    for (std::size_t j = 0; j < matrix.annotator_count(); ++j) {
      const auto& c = matrix.cell(i, j);
      if (!c) continue;
      const long cat = std::lround(*c);
      if (std::abs(*c - static_cast<double>(cat)) > 1e-9 || cat < 1 ||
          cat > K) {
        throw MetricError("answer " + format_double(*c) + " for word '" +
                          matrix.words()[i] +
                          "' is outside the Likert categories");
      }
      ++row[cat - 1];
      ++n_answers;
    }
    if (n_answers >= 2) counts.push_back(std::move(row));
  }
  if (counts.empty()) {
    throw MetricError("no word is rated by two or more annotators");
  }

  std::vector<std::vector<double>> w(K, std::vector<double>(K));
  const double span = static_cast<double>(K - 1) * (K - 1);
  for (int k = 0; k < K; ++k) {
    for (int l = 0; l < K; ++l) {
      const double d = static_cast<double>(k - l);
      w[k][l] = 1.0 - d * d / span;
    }
  }

  // Observed weighted agreement.
  double pa = 0.0;
  for (const auto& row : counts) {
    int ri = 0;
    for (int k = 0; k < K; ++k) ri += row[k];
    double item = 0.0;
    for (int k = 0; k < K; ++k) {
      if (row[k] == 0) continue;
      double weighted = 0.0;
      for (int l = 0; l < K; ++l) weighted += w[k][l] * row[l];
      item += row[k] * (weighted - 1.0);
    }
    pa += item / (static_cast<double>(ri) * (ri - 1));
  }
  pa /= static_cast<double>(counts.size());

  // Chance agreement from the pooled category propensities.
  std::vector<double> pi(K, 0.0);
  for (const auto& row : counts) {
    int ri = 0;
    for (int k = 0; k < K; ++k) ri += row[k];
    for (int k = 0; k < K; ++k) {
      pi[k] += static_cast<double>(row[k]) / ri;
    }
  }
  double spread = 0.0;
  double weight_total = 0.0;
  for (int k = 0; k < K; ++k) {
    pi[k] /= static_cast<double>(counts.size());
    spread += pi[k] * (1.0 - pi[k]);
    for (int l = 0; l < K; ++l) weight_total += w[k][l];
  }
  const double pe =
      weight_total * spread / (static_cast<double>(K) * (K - 1));
  if (std::abs(1.0 - pe) < 1e-15) return 1.0;
  return (pa - pe) / (1.0 - pe);
}

double cohens_kappa(const std::vector<std::string>& a,
                    const std::vector<std::string>& b) {
  if (a.size() != b.size()) {
    throw MetricError("kappa needs two label lists of equal length");
  }
  if (a.empty()) throw MetricError("kappa is undefined on empty lists");
  const double n = static_cast<double>(a.size());
  std::map<std::string, double> ma, mb;
  double agree = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma[a[i]] += 1.0;
    mb[b[i]] += 1.0;
    if (a[i] == b[i]) agree += 1.0;
  }
  const double po = agree / n;
  double pe = 0.0;
  for (const auto& [label, ca] : ma) {
    auto it = mb.find(label);
    if (it != mb.end()) pe += (ca / n) * (it->second / n);
  }
  if (std::abs(1.0 - pe) < 1e-15) return 1.0;
  return (po - pe) / (1.0 - pe);
}

double pearson_corr(const std::vector<double>& x,
                    const std::vector<double>& y) {
  if (x.size() != y.size()) {
    throw MetricError("correlation needs two lists of equal length");
  }
  if (x.size() < 2) {
    throw MetricError("correlation needs at least two points");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw MetricError("correlation is undefined for a constant list");
  }
  return sxy / std::sqrt(sxx * syy);
}

std::vector<std::pair<std::string, Polarity>> binarize_ratings(
    const std::vector<AggregatedRating>& ratings) {
  std::vector<std::pair<std::string, Polarity>> out;
  for (const auto& r : ratings) {
    if (r.mean_moral_valence < 5.0) {
      out.emplace_back(r.word, Polarity::Vice);
    } else if (r.mean_moral_valence > 5.0) {
      out.emplace_back(r.word, Polarity::Virtue);
    }
    // exactly neutral words carry no pole
  }
  return out;
}

}  // namespace moralkit
