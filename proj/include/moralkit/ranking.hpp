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

#ifndef MORALKIT_RANKING_HPP_
#define MORALKIT_RANKING_HPP_

#include <optional>
#include <string>
#include <vector>

#include "moralkit/crossval.hpp"

namespace moralkit {

// Methods-by-conditions score grid. Higher scores are better.
struct ScoreMatrix {
  std::vector<std::string> methods;     // rows
  std::vector<std::string> conditions;  // columns
  std::vector<std::vector<double>> scores;  // [method][condition]

  void validate() const;  // >= 2 methods, >= 1 condition, full rows
};

// CSV layout: header "method,<condition>,...", one row per method.
ScoreMatrix load_score_matrix(const std::string& path);
void save_score_matrix(const ScoreMatrix& m, const std::string& path);

// Within each condition the best (highest) score gets rank 1 and ties share
// the mean of their positions; returns each method's rank averaged over
// conditions. Ranks depend only on within-column order, so any monotone
// per-column transform of the scores leaves them unchanged.
std::vector<double> average_ranks(const ScoreMatrix& m);

enum class FriedmanVariant { ChiSquare, ImanDavenport };

struct RankResult {
  std::vector<std::string> methods;
  std::vector<double> avg_rank;
  int n_conditions = 0;
  FriedmanVariant variant = FriedmanVariant::ChiSquare;
  double statistic = 0.0;
  int df1 = 0;
  int df2 = 0;  // Iman-Davenport only
  double p_value = 1.0;
};

// Friedman's rank test: chi2 = 12N/(k(k+1)) * (sum R_j^2 - k(k+1)^2/4) on
// k = methods, N = conditions, with k-1 degrees of freedom; the p-value is
// the chi-square survival function (regularized upper incomplete gamma).
// The Iman-Davenport variant rescales to an F statistic with
// (k-1, (k-1)(N-1)) degrees of freedom.
RankResult friedman_test(const ScoreMatrix& m,
                         FriedmanVariant variant = FriedmanVariant::ChiSquare);

struct DunnResult {
  std::string baseline;
  double alpha = 0.05;
  double q_alpha = 0.0;  // standard-normal upper quantile at alpha/(2(k-1))
  double critical_difference = 0.0;
  // Per method: average rank differs from the baseline's by more than the
  // critical difference. The baseline itself is never flagged.
  std::vector<bool> significant;
};

// Bonferroni-Dunn post-hoc comparison of every method against one baseline:
// CD = q_alpha * sqrt(k(k+1)/(6N)).
DunnResult bonferroni_dunn(const RankResult& ranks, double alpha,
                           const std::string& baseline);

// Published per-trait scores treated as one more row in the comparison.
struct SotaScores {
  std::string name;
  std::vector<std::pair<MoralTrait, double>> per_trait;
};

enum class RankGranularity { PerFold, PerTrait };

struct ComparisonTable {
  std::string text;
  std::string csv;
  ScoreMatrix matrix;  // the grid the ranking ran on
  RankResult ranks;
  std::optional<DunnResult> vs_baseline;
  std::optional<DunnResult> vs_sota;
};

// Lays reports out with traits as columns and methods as rows, appends Avg
// and Rank columns, and marks methods that rank significantly better than
// the baseline with '*' and than the published scores with '+'. With
// published scores present the whole comparison runs at trait granularity
// (constants have no folds); otherwise the granularity is the caller's.
ComparisonTable render_comparison_table(
    const std::vector<EvalReport>& reports, const std::string& baseline,
    const std::optional<SotaScores>& sota = {}, double alpha = 0.05,
    RankGranularity granularity = RankGranularity::PerFold);

}  // namespace moralkit

#endif  // MORALKIT_RANKING_HPP_
