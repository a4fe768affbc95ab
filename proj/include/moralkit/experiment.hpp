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

#ifndef MORALKIT_EXPERIMENT_HPP_
#define MORALKIT_EXPERIMENT_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "moralkit/annotation.hpp"
#include "moralkit/pipeline.hpp"
#include "moralkit/ranking.hpp"

namespace moralkit {

std::string_view pooling_name(Pooling p);
Pooling parse_pooling(std::string_view name);
std::string_view f1_mode_name(F1Mode m);
F1Mode parse_f1_mode(std::string_view name);
std::string_view granularity_name(RankGranularity g);
RankGranularity parse_granularity(std::string_view name);

// Everything an evaluation run needs. Resource paths are required only by
// the feature parts that use them.
struct ExperimentConfig {
  std::string dataset_path;
  std::string lexicon_path;
  std::string embeddings_path;
  std::string mfd_path;
  std::string out_dir;
  std::vector<std::string> methods;  // "+"-joined feature part specs
  Sampling sampling = Sampling::None;
  int folds = 10;
  std::uint64_t seed = 42;
  int min_count = 1;                       // unigram vocabulary cutoff
  std::optional<int> simon_words_per_trait;
  Pooling pooling = Pooling::Max;
  F1Mode f1_mode = F1Mode::Positive;
  RankGranularity granularity = RankGranularity::PerFold;
  std::string baseline;  // empty means the first method
  double alpha = 0.05;
  std::optional<SotaScores> sota;  // published per-trait scores to rank against
};

// Reads a JSON config. Every key is optional; unknown keys are rejected so a
// typo cannot silently fall back to a default. Keys mirror the struct:
// dataset, lexicon, embeddings, mfd, out_dir, methods, sampling, folds,
// seed, min_count, simon_words_per_trait, pooling, f1, granularity,
// baseline, alpha, sota {name, scores {trait: f1}}.
ExperimentConfig load_experiment_config(const std::string& path);

// Expands the stem dictionary at mfd_path over a lemma inventory and writes
// the candidates as a review TSV (pattern, lemma, pos), sorted. An empty
// inventory yields just the header.
void run_expand(const std::string& mfd_path, const std::string& inventory_path,
                const std::string& out_path);

// Normative valence list: CSV with header word,valence.
std::map<std::string, double> load_normative_valence(const std::string& path);

struct AgreementOptions {
  std::string ratings_path;
  std::string golds_path;
  std::string normative_path;  // optional; empty skips the correlation column
  std::string mfd_path;        // optional; empty skips the dictionary column
  std::vector<std::string> discard;  // annotator ids dropped before anything
  int min_raters = 1;  // words under this rater count are left out of the
                       // correlation and dictionary comparison
};

struct AgreementRow {
  MoralTrait trait = MoralTrait::Care;
  std::optional<double> inter_annotator;   // Gwet AC2, quadratic weights
  std::optional<double> warr_correlation;  // Pearson vs the normative list
  std::optional<double> mfd_agreement;     // Cohen's kappa vs the dictionary
};

struct AgreementReport {
  std::vector<std::string> rejected;  // annotators failing the control check
  std::vector<AgreementRow> rows;     // one per lexicon trait
  std::vector<std::string> notes;     // undefined cells and why

  // Header trait,inter_annotator,warr_correlation,mfd_agreement; undefined
  // cells stay empty rather than carrying a made-up number.
  std::string to_csv() const;
};

// Screens annotators against the control words, drops rejected and discarded
// ones, and computes the per-trait agreement grid.
AgreementReport run_agreement(const AgreementOptions& opt);

// Loads the resources the parts need and builds the extractor context.
// Selection for the similarity part is computed here, once.
PipelineContext build_pipeline_context(const ExperimentConfig& cfg,
                                       const std::vector<FeaturePart>& parts);

// Fits one method on the whole dataset and writes every document's feature
// row as CSV: id, labels, then one column per feature component.
void run_featurize(const ExperimentConfig& cfg, const std::string& method_spec,
                   const std::string& out_path);

struct EvaluateResult {
  std::vector<EvalReport> reports;
  std::optional<ComparisonTable> comparison;
  std::vector<std::string> written;  // files created under out_dir
};

// Cross-validates every configured method on the dataset and writes, under
// out_dir: manifest.json (config echo without out_dir, plus input content
// hashes), report_<method>.csv per method, scores.csv (the per-fold score
// matrix) and comparison.txt/csv when at least two methods are compared.
// Runs single-threaded; equal configs and seed give byte-identical outputs.
EvaluateResult run_evaluate(const ExperimentConfig& cfg);

struct RankReport {
  RankResult ranks;
  DunnResult dunn;
  std::string text;
};

// Ranks a stored score matrix: Friedman test plus the Bonferroni-Dunn
// comparison against the baseline (default: the first row's method).
RankReport run_rank(const std::string& matrix_path, const std::string& baseline,
                    double alpha, FriedmanVariant variant);

}  // namespace moralkit

#endif  // MORALKIT_EXPERIMENT_HPP_
