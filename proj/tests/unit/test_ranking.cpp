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

#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "moralkit/error.hpp"
#include "moralkit/ranking.hpp"
#include "moralkit/util.hpp"
#include "support/fixtures.hpp"

using namespace moralkit;

namespace {

// Standard-normal upper quantile by bisection on the erfc-based tail, kept
// independent of the library's quantile source.
double upper_quantile_reference(double tail) {
  double lo = 0.0, hi = 10.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double p = 0.5 * std::erfc(mid / std::sqrt(2.0));
    (p > tail ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

ScoreMatrix random_matrix(Rng& rng, int k, int n) {
  ScoreMatrix m;
  for (int i = 0; i < k; ++i) m.methods.push_back("m" + std::to_string(i));
  for (int j = 0; j < n; ++j) m.conditions.push_back("c" + std::to_string(j));
  for (int i = 0; i < k; ++i) {
    std::vector<double> row(n);
    for (double& v : row) v = rng.unit();
    m.scores.push_back(std::move(row));
  }
  return m;
}

EvalReport fake_report(const std::string& name,
                       const std::vector<double>& care_folds,
                       const std::vector<double>& nonmoral_folds) {
  EvalReport rep;
  rep.method = name;
  rep.folds = static_cast<int>(care_folds.size());
  TraitEval care;
  care.fold_f1 = care_folds;
  for (double f : care_folds) care.mean_f1 += f;
  care.mean_f1 /= care_folds.size();
  TraitEval nm;
  nm.fold_f1 = nonmoral_folds;
  for (double f : nonmoral_folds) nm.mean_f1 += f;
  nm.mean_f1 /= nonmoral_folds.size();
  rep.traits.emplace_back(MoralTrait::Care, care);
  rep.traits.emplace_back(MoralTrait::NonMoral, nm);
  return rep;
}

}  // namespace

TEST_CASE("ranks assign one to the best and split ties at the midpoint") {
  ScoreMatrix m;
  m.methods = {"a", "b", "c"};
  m.conditions = {"only"};
  m.scores = {{0.9}, {0.7}, {0.9}};
  const auto ranks = average_ranks(m);
  CHECK(ranks[0] == doctest::Approx(1.5));
  CHECK(ranks[1] == doctest::Approx(3.0));
  CHECK(ranks[2] == doctest::Approx(1.5));
}

TEST_CASE("rank bookkeeping holds on random matrices") {
  Rng rng(31337);
  for (int trial = 0; trial < 30; ++trial) {
    const int k = 2 + static_cast<int>(rng.below(5));
    const int n = 1 + static_cast<int>(rng.below(6));
    const ScoreMatrix m = random_matrix(rng, k, n);
    const auto ranks = average_ranks(m);

    // Average ranks always average to (k+1)/2 regardless of ties.
    double sum = 0.0;
    for (double r : ranks) {
      sum += r;
      CHECK(r >= 1.0);
      CHECK(r <= static_cast<double>(k));
    }
    CHECK(sum / k == doctest::Approx((k + 1) / 2.0).epsilon(1e-12));

    // Any increasing per-column transform leaves the ranks alone.
    ScoreMatrix cubed = m;
    for (auto& row : cubed.scores) {
      for (double& v : row) v = v * v * v;
    }
    const auto ranks2 = average_ranks(cubed);
    for (int i = 0; i < k; ++i) {
      CHECK(ranks[i] == doctest::Approx(ranks2[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("a fully consistent three-method grid lands on the exact statistic") {
  ScoreMatrix m;
  m.methods = {"best", "mid", "worst"};
  m.conditions = {"c1", "c2", "c3", "c4"};
  m.scores = {{0.9, 0.8, 0.95, 0.7},
              {0.5, 0.5, 0.60, 0.5},
              {0.1, 0.2, 0.30, 0.4}};
  const RankResult res = friedman_test(m);
  CHECK(res.avg_rank[0] == 1.0);
  CHECK(res.avg_rank[2] == 3.0);
  CHECK(res.statistic == 8.0);  // exact in floating point
  CHECK(res.df1 == 2);
  // Two degrees of freedom: the survival function is exp(-x/2).
  CHECK(res.p_value == doctest::Approx(std::exp(-4.0)).epsilon(1e-12));
}

TEST_CASE("five methods over two conditions hit the df-four closed form") {
  ScoreMatrix m;
  m.methods = {"a", "b", "c", "d", "e"};
  m.conditions = {"c1", "c2"};
  m.scores = {{0.9, 0.9}, {0.8, 0.8}, {0.7, 0.7}, {0.6, 0.6}, {0.5, 0.5}};
  const RankResult res = friedman_test(m);
  CHECK(res.statistic == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(res.df1 == 4);
  // Four degrees of freedom at x: survival is exp(-x/2) (1 + x/2).
  CHECK(res.p_value ==
        doctest::Approx(std::exp(-4.0) * (1.0 + 4.0)).epsilon(1e-12));
}

TEST_CASE("the F-statistic variant rescales and saturates coherently") {
  ScoreMatrix m;
  m.methods = {"best", "mid", "worst"};
  m.conditions = {"c1", "c2", "c3", "c4"};
  m.scores = {{0.9, 0.8, 0.95, 0.7},
              {0.5, 0.5, 0.60, 0.5},
              {0.1, 0.2, 0.30, 0.4}};
  // Perfect consistency maxes the chi-square at N(k-1): F blows up.
  const RankResult sat = friedman_test(m, FriedmanVariant::ImanDavenport);
  CHECK(std::isinf(sat.statistic));
  CHECK(sat.p_value == 0.0);

  ScoreMatrix mixed = m;
  mixed.scores[1][0] = 0.95;  // one upset breaks the saturation
  const RankResult chi = friedman_test(mixed, FriedmanVariant::ChiSquare);
  const RankResult f = friedman_test(mixed, FriedmanVariant::ImanDavenport);
  const double expected_f =
      (4.0 - 1.0) * chi.statistic / (4.0 * (3.0 - 1.0) - chi.statistic);
  CHECK(f.statistic == doctest::Approx(expected_f).epsilon(1e-12));
  CHECK(f.df1 == 2);
  CHECK(f.df2 == 6);
  CHECK(f.p_value > 0.0);
  CHECK(f.p_value < 1.0);
}

TEST_CASE("the post-hoc quantile and critical difference match the reference") {
  Rng rng(4242);
  for (int trial = 0; trial < 12; ++trial) {
    const int k = 2 + static_cast<int>(rng.below(9));  // up to 10 methods
    const int n = 2 + static_cast<int>(rng.below(10));
    const ScoreMatrix m = random_matrix(rng, k, n);
    const RankResult ranks = friedman_test(m);
    const double alpha = 0.01 + rng.unit() * 0.2;

    const DunnResult dunn = bonferroni_dunn(ranks, alpha, m.methods[0]);
    const double tail = alpha / (2.0 * (k - 1));
    CHECK(dunn.q_alpha ==
          doctest::Approx(upper_quantile_reference(tail)).epsilon(1e-6));
    CHECK(dunn.critical_difference ==
          doctest::Approx(dunn.q_alpha * std::sqrt(k * (k + 1) / (6.0 * n)))
              .epsilon(1e-12));

    CHECK_FALSE(dunn.significant[0]);  // baseline never flags itself
    for (int i = 1; i < k; ++i) {
      const bool expect = std::abs(ranks.avg_rank[i] - ranks.avg_rank[0]) >
                          dunn.critical_difference;
      CHECK(dunn.significant[i] == expect);
    }
  }

  Rng fresh(1);
  const ScoreMatrix m = random_matrix(fresh, 3, 4);
  const RankResult ranks = friedman_test(m);
  CHECK_THROWS_AS(bonferroni_dunn(ranks, 0.0, "m0"), ConfigError);
  CHECK_THROWS_AS(bonferroni_dunn(ranks, 0.05, "ghost"), ConfigError);
}

TEST_CASE("score matrices survive the file round trip and reject malformed") {
  testsupport::TempDir dir;
  Rng rng(9);
  const ScoreMatrix m = random_matrix(rng, 3, 5);
  save_score_matrix(m, dir.file("scores.csv"));
  const ScoreMatrix back = load_score_matrix(dir.file("scores.csv"));
  CHECK(back.methods == m.methods);
  CHECK(back.conditions == m.conditions);
  CHECK(back.scores == m.scores);  // bit-exact numbers

  write_file_atomic(dir.file("bad.csv"), "method,c1\nm1,0.5\nm2,0.5,0.6\n");
  CHECK_THROWS_AS(load_score_matrix(dir.file("bad.csv")), ParseError);
  write_file_atomic(dir.file("dup.csv"), "method,c1\nm1,0.5\nm1,0.6\n");
  CHECK_THROWS_AS(load_score_matrix(dir.file("dup.csv")), ValidationError);
  write_file_atomic(dir.file("one.csv"), "method,c1\nm1,0.5\n");
  CHECK_THROWS_AS(load_score_matrix(dir.file("one.csv")), ValidationError);
}

TEST_CASE("comparison table separates a dominant method from the baseline") {
  const auto good = fake_report(
      "good", {0.9, 0.92, 0.88, 0.91, 0.9, 0.93, 0.89, 0.9},
      {0.85, 0.86, 0.84, 0.87, 0.85, 0.88, 0.83, 0.86});
  const auto weak = fake_report(
      "weak", {0.5, 0.52, 0.48, 0.51, 0.5, 0.53, 0.49, 0.5},
      {0.45, 0.46, 0.44, 0.47, 0.45, 0.48, 0.43, 0.46});

  const ComparisonTable table =
      render_comparison_table({weak, good}, "weak", {}, 0.05);
  // Two traits of eight folds each, two methods: good ranks 1 everywhere.
  CHECK(table.matrix.conditions.size() == 16);
  CHECK(table.ranks.avg_rank[1] == doctest::Approx(1.0));
  REQUIRE(table.vs_baseline.has_value());
  CHECK(table.vs_baseline->significant[1]);
  CHECK(table.text.find("good") != std::string::npos);
  CHECK(table.text.find("Avg") != std::string::npos);
  CHECK(table.text.find("1.00*") != std::string::npos);
  CHECK(table.csv.find("beats_baseline") != std::string::npos);

  // Not enough methods to compare is an error.
  CHECK_THROWS_AS(render_comparison_table({good}, "good", {}, 0.05),
                  ValidationError);
}

TEST_CASE("published scores join the grid at trait granularity") {
  const auto good = fake_report("good", {0.9, 0.92}, {0.85, 0.86});
  const auto weak = fake_report("weak", {0.5, 0.52}, {0.45, 0.46});

  SotaScores sota;
  sota.name = "published";
  sota.per_trait = {{MoralTrait::Care, 0.7}, {MoralTrait::NonMoral, 0.6}};

  const ComparisonTable table =
      render_comparison_table({weak, good}, "weak", sota, 0.05);
  CHECK(table.matrix.methods.size() == 3);
  CHECK(table.matrix.conditions ==
        std::vector<std::string>{"care", "non-moral"});
  CHECK(table.text.find("published") != std::string::npos);
  REQUIRE(table.vs_sota.has_value());

  SotaScores partial;
  partial.name = "published";
  partial.per_trait = {{MoralTrait::Care, 0.7}};
  // Traits missing from the published list simply drop out of the shared set.
  const ComparisonTable narrowed =
      render_comparison_table({weak, good}, "weak", partial, 0.05);
  CHECK(narrowed.matrix.conditions == std::vector<std::string>{"care"});
}

TEST_CASE("rank grids with no shared trait are rejected") {
  EvalReport isolated;
  isolated.method = "isolated";
  TraitEval purity;
  purity.fold_f1 = {0.5, 0.5};
  purity.mean_f1 = 0.5;
  isolated.traits.emplace_back(MoralTrait::Purity, purity);

  const auto good = fake_report("good", {0.9, 0.92}, {0.85, 0.86});
  CHECK_THROWS_AS(render_comparison_table({good, isolated}, "good", {}, 0.05),
                  ValidationError);
}
