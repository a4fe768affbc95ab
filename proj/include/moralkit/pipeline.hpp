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

#ifndef MORALKIT_PIPELINE_HPP_
#define MORALKIT_PIPELINE_HPP_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "moralkit/crossval.hpp"
#include "moralkit/embeddings.hpp"
#include "moralkit/lexicon.hpp"
#include "moralkit/simon.hpp"

namespace moralkit {

// The feature families a method spec may combine.
enum class FeaturePart {
  Unigrams,    // bag-of-words counts, vocabulary fitted per fold
  MoralFreq,   // per-trait pole frequencies from the scored lexicon
  MoralStats,  // per-trait valence statistics from the scored lexicon
  Simon,       // similarity vector against selected anchor words
  MfdFreq,     // per-trait pole frequencies from the stem dictionary
};

std::string_view feature_part_name(FeaturePart p);

// Parses specs like "unigrams+moral_freq". Parts keep spec order; unknown,
// empty, and repeated parts are ConfigErrors.
std::vector<FeaturePart> parse_method_spec(const std::string& spec);
std::string method_spec_name(const std::vector<FeaturePart>& parts);

// Everything corpus-independent a pipeline may need. Optional members are
// required only by the parts that use them.
struct PipelineContext {
  std::shared_ptr<const Lexicon> lexicon;          // moral_freq, moral_stats
  std::shared_ptr<const Lexicon> mfd;              // mfd_freq
  std::shared_ptr<const EmbeddingStore> embeddings;  // simon
  std::shared_ptr<const WordSelection> selection;    // simon
  int min_count = 1;             // unigram vocabulary cutoff
  Pooling pooling = Pooling::Max;
};

// Concatenation of the requested parts in spec order. Only the unigram
// vocabulary is fitted; every other part is fixed by the context, so
// training documents never leak into the test fold through them.
class ComposedExtractor : public FeatureExtractorPipeline {
 public:
  ComposedExtractor(std::vector<FeaturePart> parts, PipelineContext context);

  void fit(const std::vector<const Document*>& train_docs) override;
  FeatureVector transform(const Document& doc) const override;

 private:
  std::vector<FeaturePart> parts_;
  PipelineContext context_;
  std::optional<Vocabulary> vocab_;
};

// Validates that the context carries what the parts need (ConfigError
// otherwise) and returns a factory producing fresh extractors.
PipelineFactory make_pipeline_factory(std::vector<FeaturePart> parts,
                                      PipelineContext context);

}  // namespace moralkit

#endif  // MORALKIT_PIPELINE_HPP_
