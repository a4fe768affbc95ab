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

#include "moralkit/crossval.hpp"

#include <algorithm>

#include "moralkit/csv.hpp"
#include "moralkit/error.hpp"
#include "moralkit/util.hpp"

namespace moralkit {

std::vector<std::vector<std::size_t>> stratified_folds(
    const std::vector<bool>& labels, int k, std::uint64_t seed) {
  if (k < 2) throw ConfigError("need at least two folds");
  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    (labels[i] ? pos : neg).push_back(i);
  }
  if (static_cast<int>(pos.size()) < k || static_cast<int>(neg.size()) < k) {
    throw ValidationError(
        "stratified folds need at least " + std::to_string(k) +
        " documents per class, found " + std::to_string(pos.size()) +
        " positive and " + std::to_string(neg.size()) + " negative");
  }
  Rng rng(seed);
  shuffle(pos, rng);
  shuffle(neg, rng);
  std::vector<std::vector<std::size_t>> folds(k);
  for (std::size_t i = 0; i < pos.size(); ++i) {
    folds[i % k].push_back(pos[i]);
  }
  for (std::size_t i = 0; i < neg.size(); ++i) {
    folds[i % k].push_back(neg[i]);
  }
  for (auto& f : folds) std::sort(f.begin(), f.end());
  return folds;
}

TraitEval cross_validate(const std::vector<Document>& docs, MoralTrait label,
                         const PipelineFactory& factory,
                         const CrossValConfig& config) {
  std::vector<bool> y(docs.size());
  for (std::size_t i = 0; i < docs.size(); ++i) {
    y[i] = docs[i].labels.count(label) > 0;
  }
  std::vector<std::vector<std::size_t>> folds;
  try {
    folds = stratified_folds(y, config.k,
                             sub_seed(config.seed, "fold-split"));
  } catch (const ValidationError& e) {
    throw ValidationError("label '" + std::string(trait_name(label)) + "': " +
                          e.what());
  }

  TraitEval eval;
  for (std::size_t f = 0; f < folds.size(); ++f) {
    std::vector<bool> in_test(docs.size(), false);
    for (std::size_t i : folds[f]) in_test[i] = true;

    std::vector<const Document*> train_docs;
    for (std::size_t i = 0; i < docs.size(); ++i) {
      if (!in_test[i]) train_docs.push_back(&docs[i]);
    }
    auto pipeline = factory();
    pipeline->fit(train_docs);

    std::vector<LabeledExample> train;
    train.reserve(train_docs.size());
    for (const Document* d : train_docs) {
      train.push_back({pipeline->transform(*d), d->labels.count(label) > 0});
    }
    const std::uint64_t sampling_seed =
        sub_seed(config.seed, "sampling/fold" + std::to_string(f));
    switch (config.sampling) {
      case Sampling::None: break;
      case Sampling::Over: train = oversample(train, sampling_seed); break;
      case Sampling::Under: train = undersample(train, sampling_seed); break;
    }

    TrainConfig tc = config.train;
    tc.seed = sub_seed(config.seed, "init/fold" + std::to_string(f));
    const LogRegModel model = train_logistic(train, tc);

    std::vector<bool> predicted, gold;
    predicted.reserve(folds[f].size());
    gold.reserve(folds[f].size());
    for (std::size_t i : folds[f]) {
      predicted.push_back(predict(model, pipeline->transform(docs[i])).label);
      gold.push_back(y[i]);
    }
    eval.fold_f1.push_back(config.f1_mode == F1Mode::Positive
                               ? f1_score(predicted, gold)
                               : f1_macro(predicted, gold));
  }
  double sum = 0.0;
  for (double v : eval.fold_f1) sum += v;
  eval.mean_f1 = sum / static_cast<double>(eval.fold_f1.size());
  return eval;
}

double EvalReport::average_f1() const {
  if (traits.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& [t, e] : traits) sum += e.mean_f1;
  return sum / static_cast<double>(traits.size());
}

std::string EvalReport::to_csv() const {
  std::string out = "method,trait,fold,f1\n";
  for (const auto& [trait, eval] : traits) {
    for (std::size_t f = 0; f < eval.fold_f1.size(); ++f) {
      out += csv_row({method, std::string(trait_name(trait)),
                      std::to_string(f), format_double(eval.fold_f1[f])});
    }
    out += csv_row({method, std::string(trait_name(trait)), "mean",
                    format_double(eval.mean_f1)});
  }
  return out;
}

EvalReport evaluate_method(const std::vector<Document>& docs,
                           const std::vector<MoralTrait>& labels,
                           const std::string& method_name,
                           const PipelineFactory& factory,
                           const CrossValConfig& config) {
  EvalReport report;
  report.method = method_name;
  report.folds = config.k;
  report.sampling = config.sampling;
  report.seed = config.seed;
  for (MoralTrait label : labels) {
    try {
      report.traits.emplace_back(label,
                                 cross_validate(docs, label, factory, config));
    } catch (const ValidationError& e) {
      report.warnings.push_back(std::string("skipped ") +
                                std::string(trait_name(label)) + ": " +
                                e.what());
    }
  }
  return report;
}

}  // namespace moralkit
