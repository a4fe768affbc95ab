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

#ifndef MORALKIT_LEARN_HPP_
#define MORALKIT_LEARN_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "moralkit/feature_vector.hpp"

namespace moralkit {

struct LabeledExample {
  FeatureVector features;
  bool label = false;
};

enum class Sampling { None, Over, Under };

std::string_view sampling_name(Sampling s);
Sampling parse_sampling(std::string_view name);

// Balances classes by discarding majority examples chosen with a seeded
// shuffle. Survivors keep their original relative order. Both classes must
// be nonempty; already balanced input comes back unchanged.
std::vector<LabeledExample> undersample(
    const std::vector<LabeledExample>& examples, std::uint64_t seed);

// Balances classes by appending seeded with-replacement duplicates of
// minority examples until the counts match. Originals all survive in place.
std::vector<LabeledExample> oversample(
    const std::vector<LabeledExample>& examples, std::uint64_t seed);

struct TrainConfig {
  // Weight penalty on the mean-loss scale; defaults to 1/N at fit time.
  std::optional<double> l2_lambda;
  int max_iters = 500;
  double tolerance = 1e-6;  // gradient max-norm
  std::uint64_t seed = 0;   // recorded for provenance; training is exact
};

// A trained binary classifier plus the standardization constants fitted on
// its training data. Serializes as versioned JSON.
struct LogRegModel {
  std::shared_ptr<const FeatureNames> schema;
  std::vector<double> weights;
  double bias = 0.0;
  std::vector<double> feat_mean;
  std::vector<double> feat_sd;  // zero-variance columns store sd = 1
  double l2_lambda = 0.0;
  int max_iters = 0;
  double tolerance = 0.0;
  std::uint64_t seed = 0;
};

// Regularized negative log-likelihood and its gradient, exposed so the
// optimizer can be verified against finite differences. X is row-major,
// labels are 0/1, and the bias is not penalized.
double logreg_loss(const std::vector<std::vector<double>>& X,
                   const std::vector<double>& y,
                   const std::vector<double>& w, double b, double lambda);
void logreg_gradient(const std::vector<std::vector<double>>& X,
                     const std::vector<double>& y,
                     const std::vector<double>& w, double b, double lambda,
                     std::vector<double>& grad_w, double& grad_b);

// Full-batch gradient descent with Armijo backtracking on the standardized
// design matrix; stops when the gradient max-norm drops under the tolerance
// or the iteration budget runs out. Deterministic from zero initialization.
// Both classes must appear, and every feature value must be finite.
LogRegModel train_logistic(const std::vector<LabeledExample>& examples,
                           const TrainConfig& config = {});

struct Prediction {
  double probability = 0.0;
  bool label = false;  // probability >= 0.5
};

// Applies the stored standardization and the linear model. The feature
// schema must match the one the model was trained on.
Prediction predict(const LogRegModel& model, const FeatureVector& features);

void save_model(const LogRegModel& model, const std::string& path);
LogRegModel load_model(const std::string& path);

// Positive-class F1; 0 by convention when precision and recall are both
// undefined or zero.
double f1_score(const std::vector<bool>& predicted,
                const std::vector<bool>& gold);
// Unweighted mean of the F1 of both classes.
double f1_macro(const std::vector<bool>& predicted,
                const std::vector<bool>& gold);

enum class F1Mode { Positive, Macro };

}  // namespace moralkit

#endif  // MORALKIT_LEARN_HPP_
