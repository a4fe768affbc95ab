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

#include "moralkit/pipeline.hpp"

#include <set>

#include "moralkit/error.hpp"
#include "moralkit/features.hpp"
#include "moralkit/textproc.hpp"
#include "moralkit/util.hpp"

namespace moralkit {

std::string_view feature_part_name(FeaturePart p) {
  switch (p) {
    case FeaturePart::Unigrams:
      return "unigrams";
    case FeaturePart::MoralFreq:
      return "moral_freq";
    case FeaturePart::MoralStats:
      return "moral_stats";
    case FeaturePart::Simon:
      return "simon";
    case FeaturePart::MfdFreq:
      return "mfd_freq";
  }
  return "";
}

std::vector<FeaturePart> parse_method_spec(const std::string& spec) {
  std::vector<FeaturePart> parts;
  std::set<FeaturePart> seen;
  for (const auto& piece : split(spec, '+')) {
    const std::string name = trim(piece);
    FeaturePart part;
    if (name == "unigrams") {
      part = FeaturePart::Unigrams;
    } else if (name == "moral_freq") {
      part = FeaturePart::MoralFreq;
    } else if (name == "moral_stats") {
      part = FeaturePart::MoralStats;
    } else if (name == "simon") {
      part = FeaturePart::Simon;
    } else if (name == "mfd_freq") {
      part = FeaturePart::MfdFreq;
    } else if (name.empty()) {
      throw ConfigError("empty feature part in method spec '" + spec + "'");
    } else {
      throw ConfigError("unknown feature part '" + name + "' in method spec '" +
                        spec + "'");
    }
    if (!seen.insert(part).second) {
      throw ConfigError("feature part '" + name +
                        "' repeats in method spec '" + spec + "'");
    }
    parts.push_back(part);
  }
  if (parts.empty()) {
    throw ConfigError("method spec names no feature parts");
  }
  return parts;
}

std::string method_spec_name(const std::vector<FeaturePart>& parts) {
  std::string out;
  for (FeaturePart p : parts) {
    if (!out.empty()) out += '+';
    out += feature_part_name(p);
  }
  return out;
}

ComposedExtractor::ComposedExtractor(std::vector<FeaturePart> parts,
                                     PipelineContext context)
    : parts_(std::move(parts)), context_(std::move(context)) {}

void ComposedExtractor::fit(const std::vector<const Document*>& train_docs) {
  for (FeaturePart p : parts_) {
    if (p == FeaturePart::Unigrams) {
      vocab_ = build_vocab(train_docs, context_.min_count);
    }
  }
}

FeatureVector ComposedExtractor::transform(const Document& doc) const {
  std::vector<FeatureVector> pieces;
  pieces.reserve(parts_.size());
  for (FeaturePart p : parts_) {
    switch (p) {
      case FeaturePart::Unigrams: {
        if (!vocab_) {
          throw ValidationError("unigram pipeline used before fit");
        }
        pieces.push_back(unigram_features(doc.tokens, *vocab_));
        break;
      }
      case FeaturePart::MoralFreq:
        pieces.push_back(
            moral_freq(doc.tokens, *context_.lexicon, FreqMode::Valence));
        break;
      case FeaturePart::MoralStats:
        pieces.push_back(moral_stats(doc.tokens, *context_.lexicon));
        break;
      case FeaturePart::Simon: {
        FeatureVector fv;
        fv.name = "simon";
        fv.schema = std::make_shared<FeatureNames>(context_.selection->words);
        fv.values = simon_vector(doc.tokens, *context_.selection,
                                 *context_.embeddings, context_.pooling);
        pieces.push_back(std::move(fv));
        break;
      }
      case FeaturePart::MfdFreq:
        pieces.push_back(
            moral_freq(doc.tokens, *context_.mfd, FreqMode::PolarityLabel));
        break;
    }
  }
  return concat_features(pieces);
}

PipelineFactory make_pipeline_factory(std::vector<FeaturePart> parts,
                                      PipelineContext context) {
  if (parts.empty()) {
    throw ConfigError("method spec names no feature parts");
  }
  if (context.min_count < 1) {
    throw ConfigError("vocabulary min_count must be at least 1");
  }
  for (FeaturePart p : parts) {
    switch (p) {
      case FeaturePart::Unigrams:
        break;
      case FeaturePart::MoralFreq:
      case FeaturePart::MoralStats:
        if (!context.lexicon) {
          throw ConfigError(std::string(feature_part_name(p)) +
                            " needs a scored lexicon");
        }
        break;
      case FeaturePart::Simon:
        if (!context.embeddings) {
          throw ConfigError("simon needs word embeddings");
        }
        if (!context.selection || context.selection->words.empty()) {
          throw ConfigError("simon needs a non-empty anchor word selection");
        }
        break;
      case FeaturePart::MfdFreq:
        if (!context.mfd) {
          throw ConfigError("mfd_freq needs a stem dictionary");
        }
        break;
    }
  }
  return [parts = std::move(parts), context = std::move(context)]() {
    return std::unique_ptr<FeatureExtractorPipeline>(
        new ComposedExtractor(parts, context));
  };
}

}  // namespace moralkit
