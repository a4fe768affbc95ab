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

#include "moralkit/learn.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "moralkit/error.hpp"
#include "moralkit/util.hpp"

namespace moralkit {

std::string_view sampling_name(Sampling s) {
  switch (s) {
    case Sampling::None: return "none";
    case Sampling::Over: return "over";
    case Sampling::Under: return "under";
  }
  return "?";
}

Sampling parse_sampling(std::string_view name) {
  const std::string n = to_lower_ascii(trim(name));
  if (n == "none") return Sampling::None;
  if (n == "over") return Sampling::Over;
  if (n == "under") return Sampling::Under;
  throw ConfigError("unknown sampling mode: '" + std::string(name) + "'");
}

namespace {

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_classes(
    const std::vector<LabeledExample>& examples) {
  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < examples.size(); ++i) {
    (examples[i].label ? pos : neg).push_back(i);
  }
  if (pos.empty() || neg.empty()) {
    throw ValidationError("sampling needs both classes present");
  }
  return {std::move(pos), std::move(neg)};
}

}  // namespace

std::vector<LabeledExample> undersample(
    const std::vector<LabeledExample>& examples, std::uint64_t seed) {
  auto [pos, neg] = split_classes(examples);
  if (pos.size() == neg.size()) return examples;
  const bool pos_is_majority = pos.size() > neg.size();
  auto& majority = pos_is_majority ? pos : neg;
  const auto& minority = pos_is_majority ? neg : pos;
  const std::size_t target = minority.size();

  Rng rng(seed);
  shuffle(majority, rng);
  majority.resize(target);
  std::vector<bool> keep(examples.size(), false);
  for (std::size_t i : majority) keep[i] = true;
  for (std::size_t i : minority) keep[i] = true;

  std::vector<LabeledExample> out;
  out.reserve(2 * target);
  for (std::size_t i = 0; i < examples.size(); ++i) {
    if (keep[i]) out.push_back(examples[i]);
  }
  return out;
}

std::vector<LabeledExample> oversample(
    const std::vector<LabeledExample>& examples, std::uint64_t seed) {
  auto [pos, neg] = split_classes(examples);
  if (pos.size() == neg.size()) return examples;
  const auto& minority = pos.size() < neg.size() ? pos : neg;
  const std::size_t deficit =
      std::max(pos.size(), neg.size()) - minority.size();

  std::vector<LabeledExample> out = examples;
  out.reserve(examples.size() + deficit);
  Rng rng(seed);
  for (std::size_t i = 0; i < deficit; ++i) {
    out.push_back(examples[minority[rng.below(minority.size())]]);
  }
  return out;
}

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// log(1 + exp(x)) without overflow.
double softplus(double x) {
  if (x > 0.0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

}  // namespace

double logreg_loss(const std::vector<std::vector<double>>& X,
                   const std::vector<double>& y,
                   const std::vector<double>& w, double b, double lambda) {
  const std::size_t n = X.size();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double z = b;
    for (std::size_t j = 0; j < w.size(); ++j) z += w[j] * X[i][j];
    // -log p(y_i | x_i): softplus(-z) for the positive class, softplus(z)
    // for the negative one.
    total += y[i] > 0.5 ? softplus(-z) : softplus(z);
  }
  double penalty = 0.0;
  for (double wj : w) penalty += wj * wj;
  return total / static_cast<double>(n) + 0.5 * lambda * penalty;
}

void logreg_gradient(const std::vector<std::vector<double>>& X,
                     const std::vector<double>& y,
                     const std::vector<double>& w, double b, double lambda,
                     std::vector<double>& grad_w, double& grad_b) {
  const std::size_t n = X.size();
  grad_w.assign(w.size(), 0.0);
  grad_b = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double z = b;
    for (std::size_t j = 0; j < w.size(); ++j) z += w[j] * X[i][j];
    const double r = sigmoid(z) - y[i];
    for (std::size_t j = 0; j < w.size(); ++j) grad_w[j] += r * X[i][j];
    grad_b += r;
  }
  for (std::size_t j = 0; j < w.size(); ++j) {
    grad_w[j] = grad_w[j] / static_cast<double>(n) + lambda * w[j];
  }
  grad_b /= static_cast<double>(n);
}

LogRegModel train_logistic(const std::vector<LabeledExample>& examples,
                           const TrainConfig& config) {
  if (examples.empty()) throw ValidationError("no training examples");
  const auto schema = examples.front().features.schema;
  const std::size_t d = examples.front().features.values.size();
  bool any_pos = false, any_neg = false;
  for (const auto& ex : examples) {
    if (ex.features.values.size() != d) {
      throw ValidationError("inconsistent feature width in training data");
    }
    for (double v : ex.features.values) {
      if (!std::isfinite(v)) {
        throw ValidationError("non-finite feature value in training data");
      }
    }
    (ex.label ? any_pos : any_neg) = true;
  }
  if (!any_pos || !any_neg) {
    throw ValidationError("training needs both classes present");
  }

  const std::size_t n = examples.size();
  LogRegModel model;
  model.schema = schema;
  model.feat_mean.assign(d, 0.0);
  model.feat_sd.assign(d, 1.0);
  for (const auto& ex : examples) {
    for (std::size_t j = 0; j < d; ++j) {
      model.feat_mean[j] += ex.features.values[j];
    }
  }
  for (std::size_t j = 0; j < d; ++j) {
    model.feat_mean[j] /= static_cast<double>(n);
  }
  std::vector<double> var(d, 0.0);
  for (const auto& ex : examples) {
    for (std::size_t j = 0; j < d; ++j) {
      const double dv = ex.features.values[j] - model.feat_mean[j];
      var[j] += dv * dv;
    }
  }
  for (std::size_t j = 0; j < d; ++j) {
    const double sd = std::sqrt(var[j] / static_cast<double>(n));
    model.feat_sd[j] = sd > 0.0 ? sd : 1.0;  // constant columns stay put
  }

  std::vector<std::vector<double>> X(n, std::vector<double>(d));
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      X[i][j] =
          (examples[i].features.values[j] - model.feat_mean[j]) /
          model.feat_sd[j];
    }
    y[i] = examples[i].label ? 1.0 : 0.0;
  }

  const double lambda =
      config.l2_lambda.value_or(1.0 / static_cast<double>(n));
  std::vector<double> w(d, 0.0);
  double b = 0.0;
  std::vector<double> grad_w;
  double grad_b = 0.0;
  double loss = logreg_loss(X, y, w, b, lambda);

  for (int iter = 0; iter < config.max_iters; ++iter) {
    logreg_gradient(X, y, w, b, lambda, grad_w, grad_b);
    double gmax = std::abs(grad_b);
    double gsq = grad_b * grad_b;
    for (double g : grad_w) {
      gmax = std::max(gmax, std::abs(g));
      gsq += g * g;
    }
    if (gmax < config.tolerance) break;

    // Armijo backtracking along the steepest descent direction.
    double step = 1.0;
    std::vector<double> w_next(d);
    double b_next = 0.0, loss_next = 0.0;
    while (true) {
      for (std::size_t j = 0; j < d; ++j) w_next[j] = w[j] - step * grad_w[j];
      b_next = b - step * grad_b;
      loss_next = logreg_loss(X, y, w_next, b_next, lambda);
      if (loss_next <= loss - 1e-4 * step * gsq || step < 1e-18) break;
      step *= 0.5;
    }
    if (loss_next >= loss && step < 1e-18) break;  // no descent possible
    w.swap(w_next);
    b = b_next;
    loss = loss_next;
  }

  model.weights = std::move(w);
  model.bias = b;
  model.l2_lambda = lambda;
  model.max_iters = config.max_iters;
  model.tolerance = config.tolerance;
  model.seed = config.seed;
  return model;
}

Prediction predict(const LogRegModel& model, const FeatureVector& features) {
  if (features.values.size() != model.weights.size()) {
    throw ValidationError("feature width does not match the model");
  }
  if (model.schema && features.schema && features.schema != model.schema &&
      *features.schema != *model.schema) {
    throw ValidationError("feature schema does not match the model");
  }
  double z = model.bias;
  for (std::size_t j = 0; j < model.weights.size(); ++j) {
    const double x =
        (features.values[j] - model.feat_mean[j]) / model.feat_sd[j];
    z += model.weights[j] * x;
  }
  Prediction p;
  p.probability = sigmoid(z);
  p.label = p.probability >= 0.5;
  return p;
}

void save_model(const LogRegModel& model, const std::string& path) {
  nlohmann::json j;
  j["format_version"] = 1;
  j["schema"] = model.schema ? *model.schema : FeatureNames{};
  j["weights"] = model.weights;
  j["bias"] = model.bias;
  j["feature_means"] = model.feat_mean;
  j["feature_sds"] = model.feat_sd;
  j["l2_lambda"] = model.l2_lambda;
  j["max_iters"] = model.max_iters;
  j["tolerance"] = model.tolerance;
  j["seed"] = model.seed;
  write_file_atomic(path, j.dump(2) + "\n");
}

LogRegModel load_model(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  if (!j.is_object() || j.value("format_version", 0) != 1) {
    throw ParseError(path + ": unsupported model format");
  }
  LogRegModel m;
  try {
    m.schema = std::make_shared<const FeatureNames>(
        j.at("schema").get<FeatureNames>());
    m.weights = j.at("weights").get<std::vector<double>>();
    m.bias = j.at("bias").get<double>();
    m.feat_mean = j.at("feature_means").get<std::vector<double>>();
    m.feat_sd = j.at("feature_sds").get<std::vector<double>>();
    m.l2_lambda = j.at("l2_lambda").get<double>();
    m.max_iters = j.at("max_iters").get<int>();
    m.tolerance = j.at("tolerance").get<double>();
    m.seed = j.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  if (m.weights.size() != m.schema->size() ||
      m.weights.size() != m.feat_mean.size() ||
      m.weights.size() != m.feat_sd.size()) {
    throw ParseError(path + ": inconsistent model arrays");
  }
  return m;
}

namespace {

double f1_from_counts(long tp, long fp, long fn) {
  const long denom = 2 * tp + fp + fn;
  if (denom == 0) return 0.0;
  return 2.0 * static_cast<double>(tp) / static_cast<double>(denom);
}

}  // namespace

double f1_score(const std::vector<bool>& predicted,
                const std::vector<bool>& gold) {
  if (predicted.size() != gold.size()) {
    throw std::invalid_argument("f1: length mismatch");
  }
  long tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    if (predicted[i] && gold[i]) ++tp;
    else if (predicted[i] && !gold[i]) ++fp;
    else if (!predicted[i] && gold[i]) ++fn;
  }
  return f1_from_counts(tp, fp, fn);
}

double f1_macro(const std::vector<bool>& predicted,
                const std::vector<bool>& gold) {
  if (predicted.size() != gold.size()) {
    throw std::invalid_argument("f1: length mismatch");
  }
  long tp = 0, fp = 0, fn = 0, tn = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    if (predicted[i] && gold[i]) ++tp;
    else if (predicted[i] && !gold[i]) ++fp;
    else if (!predicted[i] && gold[i]) ++fn;
    else ++tn;
  }
  return 0.5 * (f1_from_counts(tp, fp, fn) + f1_from_counts(tn, fn, fp));
}

}  // namespace moralkit
