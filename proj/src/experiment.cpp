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

#include "moralkit/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "moralkit/csv.hpp"
#include "moralkit/dataset.hpp"
#include "moralkit/error.hpp"
#include "moralkit/util.hpp"

namespace moralkit {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view pooling_name(Pooling p) {
  return p == Pooling::Max ? "max" : "mean";
}

Pooling parse_pooling(std::string_view name) {
  const std::string n = to_lower_ascii(name);
  if (n == "max") return Pooling::Max;
  if (n == "mean") return Pooling::Mean;
  throw ConfigError("unknown pooling '" + std::string(name) +
                    "' (expected max or mean)");
}

std::string_view f1_mode_name(F1Mode m) {
  return m == F1Mode::Positive ? "positive" : "macro";
}

F1Mode parse_f1_mode(std::string_view name) {
  const std::string n = to_lower_ascii(name);
  if (n == "positive") return F1Mode::Positive;
  if (n == "macro") return F1Mode::Macro;
  throw ConfigError("unknown f1 mode '" + std::string(name) +
                    "' (expected positive or macro)");
}

std::string_view granularity_name(RankGranularity g) {
  return g == RankGranularity::PerFold ? "per_fold" : "per_trait";
}

RankGranularity parse_granularity(std::string_view name) {
  const std::string n = to_lower_ascii(name);
  if (n == "per_fold") return RankGranularity::PerFold;
  if (n == "per_trait") return RankGranularity::PerTrait;
  throw ConfigError("unknown rank granularity '" + std::string(name) +
                    "' (expected per_fold or per_trait)");
}

ExperimentConfig load_experiment_config(const std::string& path) {
  json root;
  try {
    root = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  if (!root.is_object()) {
    throw ParseError(path + ": config must be a JSON object");
  }

  static const std::set<std::string> known = {
      "dataset",   "lexicon",   "embeddings", "mfd",
      "out_dir",   "methods",   "sampling",   "folds",
      "seed",      "min_count", "simon_words_per_trait",
      "pooling",   "f1",        "granularity", "baseline",
      "alpha",     "sota"};
  for (const auto& [key, value] : root.items()) {
    (void)value;
    if (!known.count(key)) {
      throw ConfigError(path + ": unknown config key '" + key + "'");
    }
  }

  ExperimentConfig cfg;
  auto str = [&](const char* key, std::string& out) {
    if (!root.contains(key)) return;
    if (!root[key].is_string()) {
      throw ConfigError(path + ": '" + key + "' must be a string");
    }
    out = root[key].get<std::string>();
  };
  str("dataset", cfg.dataset_path);
  str("lexicon", cfg.lexicon_path);
  str("embeddings", cfg.embeddings_path);
  str("mfd", cfg.mfd_path);
  str("out_dir", cfg.out_dir);
  str("baseline", cfg.baseline);

  if (root.contains("methods")) {
    if (!root["methods"].is_array()) {
      throw ConfigError(path + ": 'methods' must be an array of strings");
    }
    for (const auto& m : root["methods"]) {
      if (!m.is_string()) {
        throw ConfigError(path + ": 'methods' must be an array of strings");
      }
      cfg.methods.push_back(m.get<std::string>());
    }
  }
  if (root.contains("sampling")) {
    cfg.sampling = parse_sampling(root["sampling"].get<std::string>());
  }
  auto integer = [&](const char* key, int& out) {
    if (!root.contains(key)) return;
    if (!root[key].is_number_integer()) {
      throw ConfigError(path + ": '" + key + "' must be an integer");
    }
    out = root[key].get<int>();
  };
  integer("folds", cfg.folds);
  integer("min_count", cfg.min_count);
  if (root.contains("seed")) {
    if (!root["seed"].is_number_unsigned() &&
        !root["seed"].is_number_integer()) {
      throw ConfigError(path + ": 'seed' must be a non-negative integer");
    }
    cfg.seed = root["seed"].get<std::uint64_t>();
  }
  if (root.contains("simon_words_per_trait")) {
    if (!root["simon_words_per_trait"].is_number_integer()) {
      throw ConfigError(path +
                        ": 'simon_words_per_trait' must be an integer");
    }
    cfg.simon_words_per_trait = root["simon_words_per_trait"].get<int>();
  }
  if (root.contains("pooling")) {
    cfg.pooling = parse_pooling(root["pooling"].get<std::string>());
  }
  if (root.contains("f1")) {
    cfg.f1_mode = parse_f1_mode(root["f1"].get<std::string>());
  }
  if (root.contains("granularity")) {
    cfg.granularity = parse_granularity(root["granularity"].get<std::string>());
  }
  if (root.contains("alpha")) {
    if (!root["alpha"].is_number()) {
      throw ConfigError(path + ": 'alpha' must be a number");
    }
    cfg.alpha = root["alpha"].get<double>();
  }
  if (root.contains("sota")) {
    const auto& s = root["sota"];
    if (!s.is_object() || !s.contains("name") || !s.contains("scores") ||
        !s["scores"].is_object()) {
      throw ConfigError(path +
                        ": 'sota' needs a name and a scores object");
    }
    SotaScores sota;
    sota.name = s["name"].get<std::string>();
    for (const auto& [tname, score] : s["scores"].items()) {
      if (!score.is_number()) {
        throw ConfigError(path + ": sota score for '" + tname +
                          "' must be a number");
      }
      sota.per_trait.emplace_back(parse_trait(tname), score.get<double>());
    }
    if (sota.per_trait.empty()) {
      throw ConfigError(path + ": 'sota' lists no scores");
    }
    cfg.sota = std::move(sota);
  }
  return cfg;
}

void run_expand(const std::string& mfd_path, const std::string& inventory_path,
                const std::string& out_path) {
  const Lexicon mfd = load_lexicon(mfd_path, LexiconFormat::Mfd);
  const auto inventory = load_inventory(inventory_path);

  // A pattern shared by several dictionary rows expands once.
  std::vector<StemPattern> patterns;
  std::set<std::string> seen;
  for (const auto& stem : mfd.stem_entries()) {
    if (seen.insert(stem.pattern.spelling()).second) {
      patterns.push_back(stem.pattern);
    }
  }

  const auto matches = expand_stems(patterns, inventory);
  std::string out = "pattern\tlemma\tpos\n";
  for (const auto& m : matches) {
    out += m.pattern.spelling();
    out += '\t';
    out += m.lemma;
    out += '\t';
    out += pos_name(m.pos);
    out += '\n';
  }
  write_file_atomic(out_path, out);
}

std::map<std::string, double> load_normative_valence(const std::string& path) {
  const auto rows = read_csv(path);
  if (rows.empty() || rows[0] != std::vector<std::string>{"word", "valence"}) {
    throw ParseError(path + ": expected header word,valence");
  }
  std::map<std::string, double> out;
  for (size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != 2) {
      throw ParseError(path + ": row " + std::to_string(r + 1) +
                       " has " + std::to_string(rows[r].size()) +
                       " fields, expected 2");
    }
    const std::string word = to_lower_ascii(rows[r][0]);
    const double v = parse_double(
        rows[r][1], path + ": row " + std::to_string(r + 1));
    if (!out.emplace(word, v).second) {
      throw ValidationError(path + ": duplicate word '" + word + "'");
    }
  }
  return out;
}

std::string AgreementReport::to_csv() const {
  std::string out =
      csv_row({"trait", "inter_annotator", "warr_correlation",
               "mfd_agreement"});
  auto cell = [](const std::optional<double>& v) {
    return v ? format_double(*v) : std::string();
  };
  for (const auto& row : rows) {
    out += csv_row({std::string(trait_name(row.trait)),
                    cell(row.inter_annotator), cell(row.warr_correlation),
                    cell(row.mfd_agreement)});
  }
  return out;
}

AgreementReport run_agreement(const AgreementOptions& opt) {
  const auto all_records = load_ratings(opt.ratings_path);
  const auto golds = load_golds(opt.golds_path);
  if (opt.min_raters < 1) {
    throw ConfigError("min_raters must be at least 1");
  }

  std::optional<std::map<std::string, double>> normative;
  if (!opt.normative_path.empty()) {
    normative = load_normative_valence(opt.normative_path);
  }
  std::optional<Lexicon> mfd;
  if (!opt.mfd_path.empty()) {
    mfd = load_lexicon(opt.mfd_path, LexiconFormat::Mfd);
  }

  const std::set<std::string> discarded(opt.discard.begin(),
                                        opt.discard.end());

  // Control-word screening runs on everyone not discarded up front.
  std::map<std::string, std::vector<RatingRecord>> by_annotator;
  for (const auto& rec : all_records) {
    if (!discarded.count(rec.annotator_id)) {
      by_annotator[rec.annotator_id].push_back(rec);
    }
  }
  if (by_annotator.empty()) {
    throw ValidationError("no annotator remains after discarding");
  }

  AgreementReport report;
  std::set<std::string> dropped = discarded;
  for (const auto& [id, recs] : by_annotator) {
    const auto verdict = validate_annotator(recs, golds);
    if (!verdict.accepted) {
      report.rejected.push_back(id);
      dropped.insert(id);
    }
  }

  std::vector<RatingRecord> records;
  for (const auto& rec : all_records) {
    if (!dropped.count(rec.annotator_id)) records.push_back(rec);
  }
  if (records.empty()) {
    throw ValidationError("every annotator was rejected or discarded");
  }

  const auto aggregated = aggregate_ratings(records, opt.min_raters);

  for (MoralTrait trait : kLexiconTraits) {
    AgreementRow row;
    row.trait = trait;
    const std::string tname(trait_name(trait));

    try {
      const auto matrix = RatingsMatrix::from_records(records, trait);
      row.inter_annotator = gwet_ac2(matrix);
    } catch (const MetricError& e) {
      report.notes.push_back(tname + ": inter_annotator undefined: " +
                             e.what());
    }

    // Per-trait aggregates at or above the rater floor.
    std::vector<AggregatedRating> trait_aggs;
    for (const auto& agg : aggregated) {
      if (agg.trait == trait && !agg.under_min) trait_aggs.push_back(agg);
    }

    if (normative) {
      std::vector<double> ours, theirs;
      for (const auto& agg : trait_aggs) {
        const auto it = normative->find(agg.word);
        if (it != normative->end()) {
          ours.push_back(agg.mean_valence);
          theirs.push_back(it->second);
        }
      }
      try {
        if (ours.size() < 2) {
          throw MetricError("fewer than two shared words");
        }
        row.warr_correlation = pearson_corr(ours, theirs);
      } catch (const MetricError& e) {
        report.notes.push_back(tname + ": warr_correlation undefined: " +
                               e.what());
      }
    }

    if (mfd) {
      std::vector<std::string> ours, theirs;
      for (const auto& [word, pole] : binarize_ratings(trait_aggs)) {
        const auto poles = mfd->stem_poles(word, trait);
        if (poles.virtue == poles.vice) continue;  // unmatched or ambiguous
        ours.emplace_back(polarity_name(pole));
        theirs.emplace_back(poles.virtue ? "virtue" : "vice");
      }
      if (ours.empty()) {
        report.notes.push_back(tname +
                               ": mfd_agreement undefined: no word falls in "
                               "both resources");
      } else {
        row.mfd_agreement = cohens_kappa(ours, theirs);
      }
    }

    report.rows.push_back(std::move(row));
  }
  return report;
}

PipelineContext build_pipeline_context(const ExperimentConfig& cfg,
                                       const std::vector<FeaturePart>& parts) {
  bool needs_lexicon = false, needs_mfd = false, needs_simon = false;
  for (FeaturePart p : parts) {
    if (p == FeaturePart::MoralFreq || p == FeaturePart::MoralStats) {
      needs_lexicon = true;
    }
    if (p == FeaturePart::MfdFreq) needs_mfd = true;
    if (p == FeaturePart::Simon) needs_simon = true;
  }
  if (needs_simon) needs_lexicon = true;  // anchors come from the lexicon

  PipelineContext ctx;
  ctx.min_count = cfg.min_count;
  ctx.pooling = cfg.pooling;
  if (needs_lexicon) {
    if (cfg.lexicon_path.empty()) {
      throw ConfigError("this method needs a scored lexicon (--lexicon)");
    }
    ctx.lexicon = std::make_shared<Lexicon>(
        load_lexicon(cfg.lexicon_path, LexiconFormat::Scored));
  }
  if (needs_mfd) {
    if (cfg.mfd_path.empty()) {
      throw ConfigError("mfd_freq needs a stem dictionary (--mfd)");
    }
    ctx.mfd = std::make_shared<Lexicon>(
        load_lexicon(cfg.mfd_path, LexiconFormat::Mfd));
  }
  if (needs_simon) {
    if (cfg.embeddings_path.empty()) {
      throw ConfigError("simon needs word embeddings (--embeddings)");
    }
    ctx.embeddings = std::make_shared<EmbeddingStore>(
        load_embeddings(cfg.embeddings_path));
    ctx.selection = std::make_shared<WordSelection>(select_words(
        *ctx.lexicon, *ctx.embeddings, cfg.simon_words_per_trait));
  }
  return ctx;
}

void run_featurize(const ExperimentConfig& cfg, const std::string& method_spec,
                   const std::string& out_path) {
  const auto parts = parse_method_spec(method_spec);
  const auto docs = load_documents(cfg.dataset_path);
  if (docs.empty()) {
    throw ValidationError(cfg.dataset_path + ": dataset is empty");
  }
  const auto ctx = build_pipeline_context(cfg, parts);
  const auto factory = make_pipeline_factory(parts, ctx);
  auto pipeline = factory();

  std::vector<const Document*> ptrs;
  ptrs.reserve(docs.size());
  for (const auto& d : docs) ptrs.push_back(&d);
  pipeline->fit(ptrs);

  std::string out;
  bool wrote_header = false;
  for (const auto& doc : docs) {
    const FeatureVector fv = pipeline->transform(doc);
    if (!wrote_header) {
      std::vector<std::string> header = {"id", "labels"};
      header.insert(header.end(), fv.schema->begin(), fv.schema->end());
      out += csv_row(header);
      wrote_header = true;
    }
    std::vector<std::string> row;
    row.push_back(doc.id);
    std::string labels;
    for (MoralTrait t : doc.labels) {
      if (!labels.empty()) labels += ',';
      labels += trait_name(t);
    }
    row.push_back(labels);
    for (double v : fv.values) row.push_back(format_double(v));
    out += csv_row(row);
  }
  write_file_atomic(out_path, out);
}

namespace {

// The per-fold score matrix over traits every report evaluated.
std::optional<ScoreMatrix> fold_matrix(const std::vector<EvalReport>& reports) {
  if (reports.size() < 2) return std::nullopt;
  auto find = [](const EvalReport& rep,
                 MoralTrait t) -> const TraitEval* {
    for (const auto& [rt, ev] : rep.traits) {
      if (rt == t) return &ev;
    }
    return nullptr;
  };
  std::vector<MoralTrait> traits;
  for (MoralTrait t : kClassLabels) {
    bool everywhere = true;
    for (const auto& rep : reports) {
      const auto* ev = find(rep, t);
      if (!ev || ev->fold_f1.size() != find(reports[0], t)->fold_f1.size()) {
        everywhere = false;
      }
    }
    if (everywhere && find(reports[0], t)) traits.push_back(t);
  }
  if (traits.empty()) return std::nullopt;

  ScoreMatrix m;
  for (const auto& rep : reports) m.methods.push_back(rep.method);
  for (MoralTrait t : traits) {
    const size_t folds = find(reports[0], t)->fold_f1.size();
    for (size_t j = 0; j < folds; ++j) {
      m.conditions.push_back(std::string(trait_name(t)) + "/f" +
                             std::to_string(j));
    }
  }
  for (const auto& rep : reports) {
    std::vector<double> row;
    for (MoralTrait t : traits) {
      const auto& f = find(rep, t)->fold_f1;
      row.insert(row.end(), f.begin(), f.end());
    }
    m.scores.push_back(std::move(row));
  }
  return m;
}

json config_manifest(const ExperimentConfig& cfg) {
  json j;
  j["format_version"] = 1;
  j["methods"] = cfg.methods;
  j["sampling"] = std::string(sampling_name(cfg.sampling));
  j["folds"] = cfg.folds;
  j["seed"] = cfg.seed;
  j["min_count"] = cfg.min_count;
  if (cfg.simon_words_per_trait) {
    j["simon_words_per_trait"] = *cfg.simon_words_per_trait;
  }
  j["pooling"] = std::string(pooling_name(cfg.pooling));
  j["f1"] = std::string(f1_mode_name(cfg.f1_mode));
  j["granularity"] = std::string(granularity_name(cfg.granularity));
  j["baseline"] = cfg.baseline.empty() && !cfg.methods.empty()
                      ? cfg.methods.front()
                      : cfg.baseline;
  j["alpha"] = cfg.alpha;
  if (cfg.sota) {
    json scores = json::object();
    for (const auto& [t, v] : cfg.sota->per_trait) {
      scores[std::string(trait_name(t))] = v;
    }
    j["sota"] = {{"name", cfg.sota->name}, {"scores", scores}};
  }

  json inputs = json::object();
  auto add_input = [&](const char* role, const std::string& path) {
    if (path.empty()) return;
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx",
                  static_cast<unsigned long long>(fnv1a64_file(path)));
    inputs[role] = {{"path", path}, {"fnv1a64", std::string(hex)}};
  };
  add_input("dataset", cfg.dataset_path);
  add_input("lexicon", cfg.lexicon_path);
  add_input("embeddings", cfg.embeddings_path);
  add_input("mfd", cfg.mfd_path);
  j["inputs"] = inputs;
  return j;
}

}  // namespace

EvaluateResult run_evaluate(const ExperimentConfig& cfg) {
  if (cfg.methods.empty()) {
    throw ConfigError("evaluate needs at least one method");
  }
  if (cfg.out_dir.empty()) {
    throw ConfigError("evaluate needs an output directory");
  }
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) {
    throw ConfigError("alpha must lie in (0, 1)");
  }
  if (!cfg.baseline.empty() &&
      std::find(cfg.methods.begin(), cfg.methods.end(), cfg.baseline) ==
          cfg.methods.end()) {
    throw ConfigError("baseline '" + cfg.baseline +
                      "' is not one of the methods");
  }

  // Parse every spec before loading anything, so a typo fails fast.
  std::vector<std::vector<FeaturePart>> part_lists;
  std::set<std::string> names;
  for (const auto& spec : cfg.methods) {
    part_lists.push_back(parse_method_spec(spec));
    if (!names.insert(method_spec_name(part_lists.back())).second) {
      throw ConfigError("method '" + spec + "' is listed twice");
    }
  }

  const auto docs = load_documents(cfg.dataset_path);
  if (docs.empty()) {
    throw ValidationError(cfg.dataset_path + ": dataset is empty");
  }

  // One context with the union of requirements; parts ignore what they do
  // not use, and the selection is shared so every method sees one anchor set.
  std::vector<FeaturePart> all_parts;
  for (const auto& parts : part_lists) {
    all_parts.insert(all_parts.end(), parts.begin(), parts.end());
  }
  const PipelineContext ctx = build_pipeline_context(cfg, all_parts);

  CrossValConfig cv;
  cv.k = cfg.folds;
  cv.sampling = cfg.sampling;
  cv.seed = cfg.seed;
  cv.f1_mode = cfg.f1_mode;

  const std::vector<MoralTrait> labels(kClassLabels.begin(),
                                       kClassLabels.end());

  EvaluateResult result;
  fs::create_directories(cfg.out_dir);
  auto emit = [&](const std::string& name, const std::string& content) {
    const std::string path = (fs::path(cfg.out_dir) / name).string();
    write_file_atomic(path, content);
    result.written.push_back(name);
  };

  emit("manifest.json", config_manifest(cfg).dump(2) + "\n");

  for (size_t i = 0; i < part_lists.size(); ++i) {
    const std::string name = method_spec_name(part_lists[i]);
    const auto factory = make_pipeline_factory(part_lists[i], ctx);
    result.reports.push_back(
        evaluate_method(docs, labels, name, factory, cv));
    emit("report_" + name + ".csv", result.reports.back().to_csv());
  }

  if (const auto folds = fold_matrix(result.reports)) {
    std::string csv;
    {
      std::vector<std::string> header;
      header.push_back("method");
      header.insert(header.end(), folds->conditions.begin(),
                    folds->conditions.end());
      csv += csv_row(header);
      for (size_t i = 0; i < folds->methods.size(); ++i) {
        std::vector<std::string> row;
        row.push_back(folds->methods[i]);
        for (double s : folds->scores[i]) row.push_back(format_double(s));
        csv += csv_row(row);
      }
    }
    emit("scores.csv", csv);
  }

  const bool comparable = result.reports.size() >= 2 || cfg.sota.has_value();
  bool any_trait = false;
  for (const auto& rep : result.reports) {
    if (!rep.traits.empty()) any_trait = true;
  }
  if (comparable && any_trait) {
    const std::string baseline =
        cfg.baseline.empty() ? result.reports.front().method : cfg.baseline;
    result.comparison = render_comparison_table(
        result.reports, baseline, cfg.sota, cfg.alpha, cfg.granularity);
    emit("comparison.txt", result.comparison->text);
    emit("comparison.csv", result.comparison->csv);
  }
  return result;
}

RankReport run_rank(const std::string& matrix_path, const std::string& baseline,
                    double alpha, FriedmanVariant variant) {
  const ScoreMatrix m = load_score_matrix(matrix_path);
  RankReport rep;
  rep.ranks = friedman_test(m, variant);
  const std::string base = baseline.empty() ? m.methods.front() : baseline;
  rep.dunn = bonferroni_dunn(rep.ranks, alpha, base);

  size_t width = 0;
  for (const auto& name : m.methods) width = std::max(width, name.size());
  std::ostringstream os;
  const size_t base_idx = static_cast<size_t>(
      std::find(m.methods.begin(), m.methods.end(), base) - m.methods.begin());
  for (size_t i = 0; i < m.methods.size(); ++i) {
    os << m.methods[i] << std::string(width - m.methods[i].size(), ' ')
       << "  " << format_double(rep.ranks.avg_rank[i]);
    if (rep.dunn.significant[i] &&
        rep.ranks.avg_rank[i] < rep.ranks.avg_rank[base_idx]) {
      os << " *";
    }
    os << "\n";
  }
  if (variant == FriedmanVariant::ChiSquare) {
    os << "\nFriedman chi2 = " << format_double(rep.ranks.statistic)
       << " (df = " << rep.ranks.df1 << ")";
  } else {
    os << "\nIman-Davenport F = " << format_double(rep.ranks.statistic)
       << " (df = " << rep.ranks.df1 << ", " << rep.ranks.df2 << ")";
  }
  os << ", p = " << format_double(rep.ranks.p_value) << "\n";
  os << "critical difference vs '" << base
     << "' = " << format_double(rep.dunn.critical_difference)
     << " at alpha = " << format_double(alpha) << "\n";
  os << "* ranks significantly better than the baseline\n";
  rep.text = os.str();
  return rep;
}

}  // namespace moralkit
