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

#ifndef MORALKIT_ANNOTATION_HPP_
#define MORALKIT_ANNOTATION_HPP_

#include <optional>
#include <string>
#include <vector>

#include "moralkit/lexicon.hpp"

namespace moralkit {

// One crowdsourced answer. An irrelevant answer carries no scores; a
// relevant one carries all three, each on the 1..9 scale.
struct RatingRecord {
  std::string annotator_id;
  std::string word;
  MoralTrait trait = MoralTrait::Care;
  bool relevant = false;
  std::optional<double> valence;
  std::optional<double> arousal;
  std::optional<double> moral_valence;
};

// A control word with a normative valence distribution. sd must be positive.
struct GoldWord {
  std::string word;
  double mean = 0.0;
  double sd = 1.0;
};

// Ratings CSV: header annotator_id,word,trait,relevant,valence,arousal,
// moral_valence. Gold CSV: header word,gold_mean,gold_sd. Both validate
// scales and the relevance/score coupling.
std::vector<RatingRecord> load_ratings(const std::string& path);
std::vector<GoldWord> load_golds(const std::string& path);

struct AnnotatorVerdict {
  bool accepted = true;
  int failed_golds = 0;
  int golds_seen = 0;
};

// Checks one annotator's answers against the control words. An answer is
// valid when its valence falls within 1.5 standard deviations of the
// normative mean, boundary included; more than one failure rejects the
// annotator. Control words the annotator never scored are ignored, but
// seeing none at all is an error.
AnnotatorVerdict validate_annotator(const std::vector<RatingRecord>& records,
                                    const std::vector<GoldWord>& golds);

// Per-(word, trait) aggregate over score-carrying answers.
struct AggregatedRating {
  std::string word;
  MoralTrait trait = MoralTrait::Care;
  int n_raters = 0;
  double mean_moral_valence = 0.0;
  double sd_moral_valence = 0.0;  // population SD
  double mean_valence = 0.0;
  double mean_arousal = 0.0;
  bool under_min = false;
};

// Groups records by (word, trait) and averages. Irrelevant answers are
// skipped; words with fewer than min_raters score-carrying answers are kept
// but flagged. Output is sorted by (word, trait).
std::vector<AggregatedRating> aggregate_ratings(
    const std::vector<RatingRecord>& records, int min_raters = 1);

// Words-by-annotators grid of Likert answers with missing cells.
class RatingsMatrix {
 public:
  RatingsMatrix(std::vector<std::string> words,
                std::vector<std::string> annotators,
                std::vector<std::optional<double>> cells /* row-major */);

  // Builds the grid for one trait from raw records, using moral_valence.
  // Duplicate (word, annotator) answers are an error.
  static RatingsMatrix from_records(const std::vector<RatingRecord>& records,
                                    MoralTrait trait);

  std::size_t word_count() const { return words_.size(); }
  std::size_t annotator_count() const { return annotators_.size(); }
  const std::vector<std::string>& words() const { return words_; }
  const std::vector<std::string>& annotators() const { return annotators_; }
  const std::optional<double>& cell(std::size_t word,
                                    std::size_t annotator) const;

  // Removes the listed annotator columns. Unknown ids are an error.
  RatingsMatrix without_annotators(const std::vector<std::string>& ids) const;

 private:
  std::vector<std::string> words_;
  std::vector<std::string> annotators_;
  std::vector<std::optional<double>> cells_;
};

// Gwet's AC2 chance-corrected agreement with quadratic weights
// w(k,l) = 1 - (k-l)^2/(K-1)^2 over categories 1..K. Handles any number of
// raters per word; words rated by fewer than two annotators are excluded
// from the computation entirely. Answers must land on the Likert categories
// (integer after rounding, inside [1, K]); reaching no usable word is an
// error. Equals 1 exactly when every multiply-rated word is unanimous.
double gwet_ac2(const RatingsMatrix& matrix, int n_categories = 9);

// Cohen's kappa for two equal-length categorical label lists, with the
// marginal-product chance correction. When chance agreement is exactly 1
// (both raters constant and identical) the convention is 1.0.
double cohens_kappa(const std::vector<std::string>& a,
                    const std::vector<std::string>& b);

// Pearson correlation. Needs at least two points and nonzero variance on
// both sides; otherwise the metric is undefined and an error is thrown.
double pearson_corr(const std::vector<double>& x,
                    const std::vector<double>& y);

// Maps aggregated means onto poles: below the scale midpoint is vice, above
// is virtue, exactly the midpoint is excluded.
std::vector<std::pair<std::string, Polarity>> binarize_ratings(
    const std::vector<AggregatedRating>& ratings);

}  // namespace moralkit

#endif  // MORALKIT_ANNOTATION_HPP_
