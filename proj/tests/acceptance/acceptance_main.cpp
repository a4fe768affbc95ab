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

// End-to-end acceptance checks. Each criterion prints exactly one PASS or
// FAIL line with its wall time; a criterion also fails by exceeding its
// time budget. The process exits non-zero if any criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "moralkit/annotation.hpp"
#include "moralkit/embeddings.hpp"
#include "moralkit/error.hpp"
#include "moralkit/experiment.hpp"
#include "moralkit/features.hpp"
#include "moralkit/learn.hpp"
#include "moralkit/lexicon.hpp"
#include "moralkit/ranking.hpp"
#include "moralkit/util.hpp"
#include "support/fixtures.hpp"

using namespace moralkit;

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& msg) {
  if (!cond) throw Failure(msg);
}

void require_close(double got, double want, double tol,
                   const std::string& what) {
  if (!(std::abs(got - want) <= tol)) {
    throw Failure(what + ": got " + format_double(got) + ", wanted " +
                  format_double(want) + " within " + format_double(tol));
  }
}

// Plain-loop cosine kept independent of the library implementation.
double cosine_reference(const std::vector<double>& a,
                        const std::vector<double>& b) {
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0 || nb == 0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

// Straight-from-the-formulas reference for the weighted multi-rater
// agreement coefficient: words with fewer than two answers drop out, the
// quadratic weight is 1 - (k-l)^2/(K-1)^2, and chance agreement spreads the
// mean per-word category shares.
double ac2_reference(const std::vector<std::vector<std::optional<int>>>& grid,
                     int k_categories) {
  const double kd = k_categories;
  std::vector<std::vector<int>> usable;
  for (const auto& row : grid) {
    std::vector<int> counts(k_categories + 1, 0);
    int raters = 0;
    for (const auto& cell : row) {
      if (cell) {
        counts[*cell] += 1;
        raters += 1;
      }
    }
    if (raters >= 2) usable.push_back(counts);
  }
  const double n = static_cast<double>(usable.size());

  auto weight = [&](int a, int b) {
    const double d = a - b;
    return 1.0 - d * d / ((kd - 1.0) * (kd - 1.0));
  };

  double pa = 0.0;
  for (const auto& counts : usable) {
    int r = 0;
    for (int k = 1; k <= k_categories; ++k) r += counts[k];
    double word = 0.0;
    for (int k = 1; k <= k_categories; ++k) {
      double starred = 0.0;
      for (int l = 1; l <= k_categories; ++l) {
        starred += weight(k, l) * counts[l];
      }
      word += counts[k] * (starred - 1.0);
    }
    pa += word / (r * (r - 1.0));
  }
  pa /= n;

  std::vector<double> pi(k_categories + 1, 0.0);
  for (const auto& counts : usable) {
    int r = 0;
    for (int k = 1; k <= k_categories; ++k) r += counts[k];
    for (int k = 1; k <= k_categories; ++k) {
      pi[k] += counts[k] / static_cast<double>(r);
    }
  }
  for (int k = 1; k <= k_categories; ++k) pi[k] /= n;

  double tw = 0.0;
  for (int k = 1; k <= k_categories; ++k) {
    for (int l = 1; l <= k_categories; ++l) tw += weight(k, l);
  }
  double spread = 0.0;
  for (int k = 1; k <= k_categories; ++k) spread += pi[k] * (1.0 - pi[k]);
  const double pe = tw / (kd * (kd - 1.0)) * spread;
  return (pa - pe) / (1.0 - pe);
}

RatingsMatrix grid_to_matrix(
    const std::vector<std::vector<std::optional<int>>>& grid) {
  std::vector<std::string> words, annotators;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    words.push_back("w" + std::to_string(i));
  }
  for (std::size_t j = 0; j < grid[0].size(); ++j) {
    annotators.push_back("a" + std::to_string(j));
  }
  std::vector<std::optional<double>> cells;
  for (const auto& row : grid) {
    for (const auto& cell : row) {
      cells.push_back(cell ? std::optional<double>(*cell) : std::nullopt);
    }
  }
  return RatingsMatrix(words, annotators, cells);
}

// Runs the built command line binary through the shell, returning its exit
// code. The command string must already carry its own redirections.
int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + MORALKIT_CLI_PATH + "\" " + args;
  const int status = std::system(cmd.c_str());
  require(status != -1, "could not launch the command line binary");
  require(WIFEXITED(status), "command line binary did not exit normally");
  return WEXITSTATUS(status);
}

const EvalReport& report_named(const EvaluateResult& res,
                               const std::string& method) {
  for (const auto& rep : res.reports) {
    if (rep.method == method) return rep;
  }
  throw Failure("no report for method '" + method + "'");
}

double rank_of(const RankResult& ranks, const std::string& method) {
  for (std::size_t i = 0; i < ranks.methods.size(); ++i) {
    if (ranks.methods[i] == method) return ranks.avg_rank[i];
  }
  throw Failure("no rank for method '" + method + "'");
}

// ---------------------------------------------------------------------------
// Criteria
// ---------------------------------------------------------------------------

// Ten frequency components and twenty statistic components, named per trait.
void check_feature_dimensions() {
  testsupport::TempDir dir;
  const Lexicon lex = load_lexicon(testsupport::write_planted_lexicon(dir),
                                   LexiconFormat::Scored);
  const std::vector<std::string> tokens = {"shelter", "kill", "the"};

  const FeatureVector freq = moral_freq(tokens, lex);
  require(freq.values.size() == 10, "frequency vector must have 10 values");
  require(freq.schema && freq.schema->size() == 10,
          "frequency schema must have 10 names");
  require((*freq.schema)[0] == "care_virtue" &&
              (*freq.schema)[1] == "care_vice",
          "frequency schema must pair virtue and vice per trait");

  const FeatureVector stats = moral_stats(tokens, lex);
  require(stats.values.size() == 20, "statistics vector must have 20 values");
  require(stats.schema && stats.schema->size() == 20,
          "statistics schema must have 20 names");
}

// The synthetic full-size lexicon must pass the census against the published
// per-trait polarity counts, and a single flipped row must be reported with
// exact numbers instead of being swallowed.
void check_lexicon_census() {
  testsupport::TempDir dir;
  const std::string path = testsupport::write_full_lexicon(dir);
  const Lexicon lex = load_lexicon(path, LexiconFormat::Scored);
  require(lex.entries().size() == 996, "census lexicon must hold 996 rows");
  require(audit_trait_counts(lex).empty(),
          "reference-profile lexicon must audit clean");

  std::string text = read_file(path);
  const auto pos = text.find("\tcare\tvirtue\t");
  require(pos != std::string::npos, "census fixture lost its care rows");
  text.replace(pos, std::string("\tcare\tvirtue\t").size(),
               "\tcare\tvice\t");
  const std::string perturbed = dir.file("perturbed.tsv");
  write_file_atomic(perturbed, text);

  const auto diffs =
      audit_trait_counts(load_lexicon(perturbed, LexiconFormat::Scored));
  require(diffs.size() == 2, "one flipped row must shift exactly two cells");
  require(diffs[0].trait == MoralTrait::Care &&
              diffs[0].polarity == Polarity::Virtue &&
              diffs[0].expected == 95 && diffs[0].actual == 94,
          "virtue cell must report 95 expected vs 94 actual");
  require(diffs[1].trait == MoralTrait::Care &&
              diffs[1].polarity == Polarity::Vice &&
              diffs[1].expected == 85 && diffs[1].actual == 86,
          "vice cell must report 85 expected vs 86 actual");
}

// The agreement coefficient must match an independent implementation of the
// closed form on at least one hundred random rating grids.
void check_agreement_closed_form() {
  Rng rng(808);
  for (int trial = 0; trial < 120; ++trial) {
    const int categories = 2 + static_cast<int>(rng.below(8));
    const int words = 3 + static_cast<int>(rng.below(10));
    const int raters = 2 + static_cast<int>(rng.below(5));

    std::vector<std::vector<std::optional<int>>> grid(
        words, std::vector<std::optional<int>>(raters));
    for (int i = 0; i < words; ++i) {
      for (int j = 0; j < raters; ++j) {
        // The first two raters always answer, so every word stays usable.
        if (j >= 2 && rng.below(5) == 0) continue;
        grid[i][j] = 1 + static_cast<int>(rng.below(categories));
      }
    }

    const double want = ac2_reference(grid, categories);
    const double got = gwet_ac2(grid_to_matrix(grid), categories);
    require_close(got, want, 1e-9,
                  "agreement mismatch on trial " + std::to_string(trial));
  }
}

// The optimizer's loss gradient must match central finite differences, a
// linearly separable set must be fitted perfectly, and a signal-free set
// must recover the base rate through the intercept.
void check_classifier_calibration() {
  Rng rng(606);
  const double h = 1e-5;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 5 + static_cast<int>(rng.below(36));
    const int d = 1 + static_cast<int>(rng.below(6));
    std::vector<std::vector<double>> X(n, std::vector<double>(d));
    std::vector<double> y(n);
    for (auto& row : X) {
      for (double& v : row) v = rng.unit() * 4.0 - 2.0;
    }
    for (double& v : y) v = static_cast<double>(rng.below(2));
    std::vector<double> w(d);
    for (double& v : w) v = rng.unit() * 2.0 - 1.0;
    double b = rng.unit() * 2.0 - 1.0;
    const double lambda =
        std::vector<double>{0.0, 0.1, 1.0}[rng.below(3)];

    std::vector<double> gw;
    double gb = 0.0;
    logreg_gradient(X, y, w, b, lambda, gw, gb);

    auto check_coord = [&](double analytic, double up, double down,
                           const std::string& what) {
      const double numeric = (up - down) / (2.0 * h);
      const double scale = std::max({1.0, std::abs(numeric),
                                     std::abs(analytic)});
      if (std::abs(numeric - analytic) / scale >= 1e-4) {
        throw Failure(what + ": analytic " + format_double(analytic) +
                      " vs numeric " + format_double(numeric));
      }
    };

    for (int j = 0; j < d; ++j) {
      std::vector<double> wp = w, wm = w;
      wp[j] += h;
      wm[j] -= h;
      check_coord(gw[j], logreg_loss(X, y, wp, b, lambda),
                  logreg_loss(X, y, wm, b, lambda),
                  "weight gradient, trial " + std::to_string(trial));
    }
    check_coord(gb, logreg_loss(X, y, w, b + h, lambda),
                logreg_loss(X, y, w, b - h, lambda),
                "bias gradient, trial " + std::to_string(trial));
  }

  // Linearly separable clusters must be classified perfectly.
  auto schema = std::make_shared<FeatureNames>();
  for (int j = 0; j < 3; ++j) schema->push_back("x" + std::to_string(j));
  std::vector<LabeledExample> data;
  for (int i = 0; i < 40; ++i) {
    const bool label = i % 2 == 0;
    LabeledExample ex;
    ex.label = label;
    ex.features.name = "synthetic";
    ex.features.schema = schema;
    for (int j = 0; j < 3; ++j) {
      const double center = label ? 1.0 : -1.0;
      ex.features.values.push_back(center + (rng.unit() - 0.5) * 0.3);
    }
    data.push_back(std::move(ex));
  }
  const LogRegModel model = train_logistic(data);
  std::vector<bool> pred, gold;
  for (const auto& ex : data) {
    pred.push_back(predict(model, ex.features).label);
    gold.push_back(ex.label);
  }
  require_close(f1_score(pred, gold), 1.0, 1e-12,
                "separable data must reach a perfect score");

  // One constant column: only the intercept can learn, and it must settle
  // on the log-odds of the positive rate.
  auto flat_schema = std::make_shared<FeatureNames>();
  flat_schema->push_back("flat");
  std::vector<LabeledExample> flat;
  for (int i = 0; i < 10; ++i) {
    LabeledExample ex;
    ex.label = i < 7;
    ex.features.name = "flat";
    ex.features.schema = flat_schema;
    ex.features.values = {3.0};
    flat.push_back(std::move(ex));
  }
  TrainConfig flat_cfg;
  flat_cfg.l2_lambda = 0.0;
  const LogRegModel flat_model = train_logistic(flat, flat_cfg);
  require_close(predict(flat_model, flat[0].features).probability, 0.7, 1e-4,
                "signal-free training must recover the base rate");
}

// The document similarity vector must equal brute-force pooled cosines, and
// a document containing an anchor word must max-pool that anchor to one.
void check_similarity_features() {
  Rng rng(909);
  std::vector<std::string> vocab;
  for (int i = 0; i < 12; ++i) vocab.push_back("w" + std::to_string(i));

  for (int trial = 0; trial < 100; ++trial) {
    const int dim = 2 + static_cast<int>(rng.below(5));
    EmbeddingStore store(dim);
    for (const auto& w : vocab) {
      std::vector<double> v(dim);
      for (double& x : v) x = rng.unit() * 2.0 - 1.0;
      store.insert(w, v);
    }

    WordSelection sel;
    for (int i = 0; i < 4; ++i) {
      sel.words.push_back(vocab[rng.below(vocab.size())]);
    }

    std::vector<std::string> tokens;
    const int n = 1 + static_cast<int>(rng.below(8));
    for (int i = 0; i < n; ++i) {
      tokens.push_back(rng.below(4) == 0 ? "oov"
                                         : vocab[rng.below(vocab.size())]);
    }

    for (Pooling pooling : {Pooling::Max, Pooling::Mean}) {
      const auto got = simon_vector(tokens, sel, store, pooling);
      require(got.size() == sel.words.size(),
              "similarity vector size must match the anchor count");

      std::vector<const std::vector<double>*> embedded;
      for (const auto& t : tokens) {
        if (const auto* v = store.find(t)) embedded.push_back(v);
      }
      for (std::size_t j = 0; j < sel.words.size(); ++j) {
        double want = 0.0;
        if (!embedded.empty()) {
          const auto* anchor = store.find(sel.words[j]);
          if (pooling == Pooling::Max) {
            want = -2.0;
            for (const auto* v : embedded) {
              want = std::max(want, cosine_reference(*v, *anchor));
            }
          } else {
            for (const auto* v : embedded) {
              want += cosine_reference(*v, *anchor);
            }
            want /= static_cast<double>(embedded.size());
          }
        }
        require_close(got[j], want, 1e-12,
                      "similarity mismatch on trial " +
                          std::to_string(trial));
      }
    }

    // A document containing the anchor itself max-pools to one.
    const std::string& anchor = sel.words[0];
    const auto pinned =
        simon_vector({anchor, "oov"}, sel, store, Pooling::Max);
    require_close(pinned[0], 1.0, 1e-12,
                  "anchor inside the document must score one");
  }
}

// A fully consistent grid must produce the exact closed-form statistic, and
// ranks must be invariant under monotone per-column transforms.
void check_rank_statistics() {
  ScoreMatrix m;
  m.methods = {"best", "mid", "worst"};
  m.conditions = {"c1", "c2", "c3", "c4"};
  m.scores = {{0.9, 0.8, 0.95, 0.7},
              {0.5, 0.5, 0.60, 0.5},
              {0.1, 0.2, 0.30, 0.4}};
  const RankResult res = friedman_test(m);
  require(res.statistic == 8.0,
          "a fully consistent 3x4 grid must score exactly 8");
  require(res.df1 == 2, "three methods must leave two degrees of freedom");
  require_close(res.p_value, std::exp(-4.0), 1e-12,
                "two-degree survival must equal exp(-x/2)");

  Rng rng(303);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 2 + static_cast<int>(rng.below(5));
    const int n = 1 + static_cast<int>(rng.below(6));
    ScoreMatrix grid;
    for (int i = 0; i < k; ++i) grid.methods.push_back("m" + std::to_string(i));
    for (int j = 0; j < n; ++j) {
      grid.conditions.push_back("c" + std::to_string(j));
    }
    for (int i = 0; i < k; ++i) {
      std::vector<double> row(n);
      for (double& v : row) v = rng.unit();
      grid.scores.push_back(std::move(row));
    }

    const auto ranks = average_ranks(grid);
    double sum = 0.0;
    for (double r : ranks) sum += r;
    require_close(sum, k * (k + 1) / 2.0, 1e-9,
                  "average ranks must sum to k(k+1)/2");

    ScoreMatrix warped = grid;
    for (auto& row : warped.scores) {
      for (double& v : row) v = std::exp(3.0 * v);  // strictly increasing
    }
    const auto warped_ranks = average_ranks(warped);
    for (int i = 0; i < k; ++i) {
      require_close(warped_ranks[i], ranks[i], 1e-12,
                    "ranks must survive a monotone transform");
    }
  }
}

// A corpus with planted trait vocabulary must be recovered end to end: the
// scored-lexicon methods reach a high mean score and outrank the starved
// dictionary baseline.
void check_planted_corpus_end_to_end() {
  testsupport::TempDir dir;
  ExperimentConfig cfg;
  cfg.dataset_path = testsupport::write_planted_corpus(dir, 600, 11);
  cfg.lexicon_path = testsupport::write_planted_lexicon(dir);
  cfg.mfd_path = testsupport::write_weak_mfd(dir);
  cfg.methods = {"mfd_freq", "moral_freq", "unigrams+moral_freq"};
  cfg.sampling = Sampling::Under;
  cfg.folds = 10;
  cfg.seed = 42;
  cfg.out_dir = dir.file("out");

  const EvaluateResult res = run_evaluate(cfg);
  for (const auto& rep : res.reports) {
    require(rep.warnings.empty(),
            "no label may be skipped on the planted corpus");
  }

  const double lex_f1 = report_named(res, "moral_freq").average_f1();
  require(lex_f1 >= 0.9, "scored-lexicon frequencies must reach 0.9, got " +
                             format_double(lex_f1));
  const double combo_f1 =
      report_named(res, "unigrams+moral_freq").average_f1();
  require(combo_f1 >= 0.9,
          "unigrams plus frequencies must reach 0.9, got " +
              format_double(combo_f1));

  require(res.comparison.has_value(), "three methods must be compared");
  const RankResult& ranks = res.comparison->ranks;
  require(rank_of(ranks, "unigrams+moral_freq") < rank_of(ranks, "mfd_freq"),
          "the combined method must outrank the dictionary baseline");
}

// The published six-trait score grid must reproduce the known ordering:
// dictionary counts, then plain unigrams, then unigrams with similarity.
void check_published_grid() {
  ScoreMatrix m;
  m.methods = {"dictionary_counts", "unigrams", "unigrams_similarity"};
  m.conditions = {"care",   "fairness", "loyalty",
                  "authority", "purity", "non-moral"};
  m.scores = {{56.3, 59.2, 61.8, 54.4, 63.1, 66.4},
              {74.0, 76.9, 76.5, 80.7, 94.1, 77.2},
              {84.6, 85.6, 81.2, 90.0, 98.9, 85.5}};

  const auto ranks = average_ranks(m);
  require(ranks[0] == 3.0 && ranks[1] == 2.0 && ranks[2] == 1.0,
          "the three methods must rank 3, 2, 1");

  auto mean_of = [&](int i) {
    double s = 0.0;
    for (double v : m.scores[i]) s += v;
    return s / static_cast<double>(m.scores[i].size());
  };
  require_close(mean_of(0), 60.2, 0.05, "dictionary-count average");
  require_close(mean_of(1), 79.9, 0.05, "unigram average");
  require_close(mean_of(2), 87.6, 0.05, "unigram-plus-similarity average");

  const RankResult res = friedman_test(m);
  require(res.statistic == 12.0,
          "a consistent 3x6 grid must score exactly 12");
  require(res.p_value < 0.05,
          "the ordering must be significant at the 5% level");
}

// Two command line runs with one seed must write byte-identical outputs,
// and a missing input file must exit with the data-error code.
void check_cli_determinism() {
  testsupport::TempDir dir;
  const std::string corpus = testsupport::write_planted_corpus(dir, 120, 5);
  const std::string lexicon = testsupport::write_planted_lexicon(dir);
  const std::string mfd = testsupport::write_weak_mfd(dir);

  auto evaluate_cmd = [&](const std::string& out_dir) {
    return "evaluate --data \"" + corpus + "\" --lexicon \"" + lexicon +
           "\" --mfd \"" + mfd +
           "\" --features mfd_freq,moral_freq --sampling under --folds 3 "
           "--seed 9 --out \"" +
           out_dir + "\" >/dev/null 2>&1";
  };

  require(run_cli(evaluate_cmd(dir.file("cli_a"))) == 0,
          "first evaluation run must succeed");
  require(run_cli(evaluate_cmd(dir.file("cli_b"))) == 0,
          "second evaluation run must succeed");

  const std::vector<std::string> files = {
      "manifest.json",         "report_mfd_freq.csv",
      "report_moral_freq.csv", "scores.csv",
      "comparison.txt",        "comparison.csv"};
  for (const auto& name : files) {
    const std::string a = read_file(dir.file("cli_a") + "/" + name);
    const std::string b = read_file(dir.file("cli_b") + "/" + name);
    require(a == b, name + " must be byte-identical across equal-seed runs");
    require(!a.empty(), name + " must not be empty");
  }

  const int missing = run_cli(
      "evaluate --data \"" + dir.file("no_such_corpus.jsonl") +
      "\" --lexicon \"" + lexicon +
      "\" --features moral_freq --folds 3 --out \"" + dir.file("cli_c") +
      "\" >/dev/null 2>&1");
  require(missing == 2, "a missing input file must exit with code 2, got " +
                            std::to_string(missing));
}

struct Criterion {
  std::string name;
  double budget_seconds;
  std::function<void()> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"moral frequency and statistics dimensionality", 1.0,
       check_feature_dimensions},
      {"lexicon census matches the published counts", 1.0,
       check_lexicon_census},
      {"multi-rater agreement matches the closed form", 10.0,
       check_agreement_closed_form},
      {"classifier gradients, separability and base rate", 30.0,
       check_classifier_calibration},
      {"similarity features match brute-force pooling", 10.0,
       check_similarity_features},
      {"rank statistic exactness and monotone invariance", 5.0,
       check_rank_statistics},
      {"planted corpus recovered end to end", 120.0,
       check_planted_corpus_end_to_end},
      {"published score grid reproduces the ordering", 1.0,
       check_published_grid},
      {"command line runs are deterministic and fail cleanly", 60.0,
       check_cli_determinism},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string reason;
    try {
      c.body();
    } catch (const std::exception& e) {
      reason = e.what();
    } catch (...) {
      reason = "unknown exception";
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      start)
            .count();
    if (reason.empty() && elapsed > c.budget_seconds) {
      std::ostringstream os;
      os << "wall time " << elapsed << "s exceeded the "
         << c.budget_seconds << "s budget";
      reason = os.str();
    }

    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << (reason.empty() ? "PASS" : "FAIL") << "  " << c.name << "  ("
         << elapsed << "s, budget " << c.budget_seconds << "s)";
    if (!reason.empty()) {
      line << ": " << reason;
      ++failed;
    }
    std::cout << line.str() << std::endl;
  }

  std::cout << (criteria.size() - failed) << " of " << criteria.size()
            << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
