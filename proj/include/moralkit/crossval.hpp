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

#ifndef MORALKIT_CROSSVAL_HPP_
#define MORALKIT_CROSSVAL_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "moralkit/learn.hpp"
#include "moralkit/textproc.hpp"

namespace moralkit {

// A feature extractor that must be fitted on training documents before it
// can transform any document. Anything corpus-dependent (such as a unigram
// vocabulary) is learned in fit(), never from held-out data.
class FeatureExtractorPipeline {
 public:
  virtual ~FeatureExtractorPipeline() = default;
  virtual void fit(const std::vector<const Document*>& train_docs) = 0;
  virtual FeatureVector transform(const Document& doc) const = 0;
};

// Produces a fresh, unfitted pipeline for each fold.
using PipelineFactory =
    std::function<std::unique_ptr<FeatureExtractorPipeline>()>;

// Seeded stratified fold assignment: each class is shuffled and dealt
// round-robin, so fold test sizes differ by at most one per class and the
// folds partition the corpus exactly.
std::vector<std::vector<std::size_t>> stratified_folds(
    const std::vector<bool>& labels, int k, std::uint64_t seed);

struct CrossValConfig {
  int k = 10;
  Sampling sampling = Sampling::None;
  std::uint64_t seed = 42;
  F1Mode f1_mode = F1Mode::Positive;
  TrainConfig train;
};

// Per-fold F1 scores of one binary task.
struct TraitEval {
  std::vector<double> fold_f1;
  double mean_f1 = 0.0;
};

// Runs seeded stratified k-fold evaluation of one label. Per fold, the
// pipeline is fitted on the training documents, sampling is applied to the
// training examples only, and the model's standardization constants come
// from what it is trained on. Fewer than k documents in either class is an
// error naming the label.
TraitEval cross_validate(const std::vector<Document>& docs, MoralTrait label,
                         const PipelineFactory& factory,
                         const CrossValConfig& config);

// One method's evaluation across the classification labels.
struct EvalReport {
  std::string method;
  int folds = 0;
  Sampling sampling = Sampling::None;
  std::uint64_t seed = 0;
  std::vector<std::pair<MoralTrait, TraitEval>> traits;
  std::vector<std::string> warnings;  // skipped labels and why

  double average_f1() const;
  // Rows method,trait,fold,f1 with a closing mean row per trait.
  std::string to_csv() const;
};

// Runs cross_validate for every requested label, skipping (with a recorded
// warning) the ones with too few documents in a class.
EvalReport evaluate_method(const std::vector<Document>& docs,
                           const std::vector<MoralTrait>& labels,
                           const std::string& method_name,
                           const PipelineFactory& factory,
                           const CrossValConfig& config);

}  // namespace moralkit

#endif  // MORALKIT_CROSSVAL_HPP_
