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

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "moralkit/error.hpp"
#include "moralkit/experiment.hpp"
#include "moralkit/util.hpp"

namespace {

using moralkit::ExperimentConfig;

// Exit codes: 0 success, 1 usage or configuration problem, 2 bad data.

struct CommonFlags {
  std::string config_path;
  std::string dataset, lexicon, embeddings, mfd;
  std::string sampling, pooling, f1, granularity;
  std::vector<std::string> methods;
  std::string baseline;
  int folds = -1;
  int min_count = -1;
  int simon_words = -1;
  double alpha = -1.0;
  std::string seed;  // string so "unset" is distinguishable
};

void add_resource_flags(CLI::App* cmd, CommonFlags* f) {
  cmd->add_option("--config", f->config_path,
                  "JSON config file; flags override its values");
  cmd->add_option("--data", f->dataset, "labeled documents (.jsonl or .csv)");
  cmd->add_option("--lexicon", f->lexicon, "scored lexicon TSV");
  cmd->add_option("--embeddings", f->embeddings, "word embedding text file");
  cmd->add_option("--mfd", f->mfd, "stem dictionary TSV");
}

void add_eval_flags(CLI::App* cmd, CommonFlags* f) {
  cmd->add_option("--features", f->methods,
                  "method specs like unigrams+moral_freq (repeatable or "
                  "comma separated)")
      ->delimiter(',');
  cmd->add_option("--sampling", f->sampling, "none, over or under");
  cmd->add_option("--folds", f->folds, "cross-validation folds");
  cmd->add_option("--seed", f->seed, "master random seed");
  cmd->add_option("--min-count", f->min_count,
                  "unigram vocabulary frequency cutoff");
  cmd->add_option("--simon-words", f->simon_words,
                  "anchor words kept per trait (default: all)");
  cmd->add_option("--pooling", f->pooling, "max or mean");
  cmd->add_option("--f1", f->f1, "positive or macro");
  cmd->add_option("--granularity", f->granularity, "per_fold or per_trait");
  cmd->add_option("--baseline", f->baseline,
                  "method the significance markers compare against");
  cmd->add_option("--alpha", f->alpha, "significance level");
}

ExperimentConfig merge_config(const CommonFlags& f) {
  ExperimentConfig cfg;
  if (!f.config_path.empty()) {
    cfg = moralkit::load_experiment_config(f.config_path);
  }
  if (!f.dataset.empty()) cfg.dataset_path = f.dataset;
  if (!f.lexicon.empty()) cfg.lexicon_path = f.lexicon;
  if (!f.embeddings.empty()) cfg.embeddings_path = f.embeddings;
  if (!f.mfd.empty()) cfg.mfd_path = f.mfd;
  if (!f.methods.empty()) cfg.methods = f.methods;
  if (!f.sampling.empty()) cfg.sampling = moralkit::parse_sampling(f.sampling);
  if (f.folds >= 0) cfg.folds = f.folds;
  if (!f.seed.empty()) {
    cfg.seed = static_cast<std::uint64_t>(
        moralkit::parse_long(f.seed, "--seed"));
  }
  if (f.min_count >= 0) cfg.min_count = f.min_count;
  if (f.simon_words >= 0) cfg.simon_words_per_trait = f.simon_words;
  if (!f.pooling.empty()) cfg.pooling = moralkit::parse_pooling(f.pooling);
  if (!f.f1.empty()) cfg.f1_mode = moralkit::parse_f1_mode(f.f1);
  if (!f.granularity.empty()) {
    cfg.granularity = moralkit::parse_granularity(f.granularity);
  }
  if (!f.baseline.empty()) cfg.baseline = f.baseline;
  if (f.alpha >= 0.0) cfg.alpha = f.alpha;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"moral foundations text analysis"};
  app.require_subcommand(1);

  // expand: stem dictionary x lemma inventory -> review candidates
  std::string ex_mfd, ex_inventory, ex_out;
  auto* expand = app.add_subcommand(
      "expand", "expand dictionary stems over a lemma inventory");
  expand->add_option("--mfd", ex_mfd, "stem dictionary TSV")->required();
  expand->add_option("--inventory", ex_inventory, "lemma#pos list, one per line")
      ->required();
  expand->add_option("--out", ex_out, "candidate TSV to write")->required();

  // agreement: annotation quality metrics
  moralkit::AgreementOptions ag;
  std::string ag_out;
  auto* agreement = app.add_subcommand(
      "agreement", "annotator screening and agreement metrics");
  agreement->add_option("--ratings", ag.ratings_path, "ratings CSV")
      ->required();
  agreement->add_option("--golds", ag.golds_path, "control words CSV")
      ->required();
  agreement->add_option("--normative", ag.normative_path,
                        "normative valence CSV (word,valence)");
  agreement->add_option("--mfd", ag.mfd_path, "stem dictionary TSV");
  agreement->add_option("--discard", ag.discard,
                        "annotator ids to drop up front")
      ->delimiter(',');
  agreement->add_option("--min-raters", ag.min_raters,
                        "rater floor for aggregate-based metrics");
  agreement->add_option("--out", ag_out, "agreement CSV to write");

  // featurize: dump one method's feature matrix
  CommonFlags ft;
  std::string ft_method, ft_out;
  auto* featurize =
      app.add_subcommand("featurize", "write one method's feature matrix");
  add_resource_flags(featurize, &ft);
  featurize->add_option("--features", ft_method,
                        "method spec like unigrams+moral_freq");
  featurize->add_option("--min-count", ft.min_count,
                        "unigram vocabulary frequency cutoff");
  featurize->add_option("--simon-words", ft.simon_words,
                        "anchor words kept per trait (default: all)");
  featurize->add_option("--pooling", ft.pooling, "max or mean");
  featurize->add_option("--out", ft_out, "feature CSV to write")->required();

  // evaluate: cross-validated comparison of methods
  CommonFlags ev;
  std::string ev_out_dir;
  auto* evaluate = app.add_subcommand(
      "evaluate", "cross-validate methods and rank them");
  add_resource_flags(evaluate, &ev);
  add_eval_flags(evaluate, &ev);
  evaluate->add_option("--out", ev_out_dir, "output directory");

  // rank: Friedman + post-hoc over a stored score matrix
  std::string rk_matrix, rk_baseline;
  double rk_alpha = 0.05;
  bool rk_iman = false;
  auto* rank = app.add_subcommand(
      "rank", "rank methods from a stored score matrix");
  rank->add_option("--scores", rk_matrix, "score matrix CSV")->required();
  rank->add_option("--baseline", rk_baseline,
                   "method to compare against (default: first row)");
  rank->add_option("--alpha", rk_alpha, "significance level");
  rank->add_flag("--iman-davenport", rk_iman,
                 "report the F-statistic variant");

  CLI11_PARSE(app, argc, argv);

  try {
    if (expand->parsed()) {
      moralkit::run_expand(ex_mfd, ex_inventory, ex_out);
      std::cout << "wrote " << ex_out << "\n";
      return 0;
    }
    if (agreement->parsed()) {
      const auto report = moralkit::run_agreement(ag);
      for (const auto& id : report.rejected) {
        std::cerr << "rejected annotator: " << id << "\n";
      }
      for (const auto& note : report.notes) {
        std::cerr << "note: " << note << "\n";
      }
      const std::string csv = report.to_csv();
      if (ag_out.empty()) {
        std::cout << csv;
      } else {
        moralkit::write_file_atomic(ag_out, csv);
        std::cout << "wrote " << ag_out << "\n";
      }
      return 0;
    }
    if (featurize->parsed()) {
      if (ft_method.empty()) {
        throw moralkit::ConfigError("featurize needs --features");
      }
      const ExperimentConfig cfg = merge_config(ft);
      if (cfg.dataset_path.empty()) {
        throw moralkit::ConfigError("featurize needs --data");
      }
      moralkit::run_featurize(cfg, ft_method, ft_out);
      std::cout << "wrote " << ft_out << "\n";
      return 0;
    }
    if (evaluate->parsed()) {
      ExperimentConfig cfg = merge_config(ev);
      if (!ev_out_dir.empty()) cfg.out_dir = ev_out_dir;
      if (cfg.dataset_path.empty()) {
        throw moralkit::ConfigError("evaluate needs --data");
      }
      const auto result = moralkit::run_evaluate(cfg);
      for (const auto& rep : result.reports) {
        for (const auto& w : rep.warnings) {
          std::cerr << rep.method << ": " << w << "\n";
        }
      }
      if (result.comparison) {
        std::cout << result.comparison->text;
      } else {
        for (const auto& rep : result.reports) {
          std::cout << rep.method << ": mean F1 = "
                    << moralkit::format_double(rep.average_f1()) << "\n";
        }
      }
      std::cout << "outputs in " << cfg.out_dir << "\n";
      return 0;
    }
    if (rank->parsed()) {
      const auto rep = moralkit::run_rank(
          rk_matrix, rk_baseline, rk_alpha,
          rk_iman ? moralkit::FriedmanVariant::ImanDavenport
                  : moralkit::FriedmanVariant::ChiSquare);
      std::cout << rep.text;
      return 0;
    }
  } catch (const moralkit::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const moralkit::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
