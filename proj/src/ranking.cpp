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

#include "moralkit/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/normal.hpp>

#include "moralkit/csv.hpp"
#include "moralkit/error.hpp"
#include "moralkit/util.hpp"

namespace moralkit {

void ScoreMatrix::validate() const {
  if (methods.size() < 2) {
    throw ValidationError("ranking needs at least two methods, have " +
                          std::to_string(methods.size()));
  }
  if (conditions.empty()) {
    throw ValidationError("ranking needs at least one condition");
  }
  if (scores.size() != methods.size()) {
    throw ValidationError("score matrix has " + std::to_string(scores.size()) +
                          " rows for " + std::to_string(methods.size()) +
                          " methods");
  }
  for (size_t i = 0; i < scores.size(); ++i) {
    if (scores[i].size() != conditions.size()) {
      throw ValidationError("method '" + methods[i] + "' has " +
                            std::to_string(scores[i].size()) +
                            " scores for " +
                            std::to_string(conditions.size()) + " conditions");
    }
    for (double s : scores[i]) {
      if (!std::isfinite(s)) {
        throw ValidationError("method '" + methods[i] +
                              "' has a non-finite score");
      }
    }
  }
  std::set<std::string> seen(methods.begin(), methods.end());
  if (seen.size() != methods.size()) {
    throw ValidationError("duplicate method name in score matrix");
  }
}

ScoreMatrix load_score_matrix(const std::string& path) {
  const auto rows = read_csv(path);
  if (rows.empty()) throw ParseError(path + ": empty score matrix");
  const auto& header = rows[0];
  if (header.size() < 2 || header[0] != "method") {
    throw ParseError(path + ": header must start with 'method' followed by "
                            "condition names");
  }
  ScoreMatrix m;
  m.conditions.assign(header.begin() + 1, header.end());
  for (size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != header.size()) {
      throw ParseError(path + ": row " + std::to_string(r + 1) + " has " +
                       std::to_string(row.size()) + " fields, expected " +
                       std::to_string(header.size()));
    }
    m.methods.push_back(row[0]);
    std::vector<double> vals;
    vals.reserve(row.size() - 1);
    for (size_t c = 1; c < row.size(); ++c) {
      vals.push_back(parse_double(row[c], path + ": row " +
                                              std::to_string(r + 1)));
    }
    m.scores.push_back(std::move(vals));
  }
  m.validate();
  return m;
}

void save_score_matrix(const ScoreMatrix& m, const std::string& path) {
  m.validate();
  std::string out;
  std::vector<std::string> header;
  header.push_back("method");
  header.insert(header.end(), m.conditions.begin(), m.conditions.end());
  out += csv_row(header);
  for (size_t i = 0; i < m.methods.size(); ++i) {
    std::vector<std::string> row;
    row.push_back(m.methods[i]);
    for (double s : m.scores[i]) row.push_back(format_double(s));
    out += csv_row(row);
  }
  write_file_atomic(path, out);
}

namespace {

// Midrank assignment for one column, rank 1 = highest score.
std::vector<double> column_ranks(const ScoreMatrix& m, size_t col) {
  const size_t k = m.methods.size();
  std::vector<size_t> order(k);
  std::iota(order.begin(), order.end(), size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return m.scores[a][col] > m.scores[b][col];
  });
  std::vector<double> ranks(k, 0.0);
  size_t i = 0;
  while (i < k) {
    size_t j = i;
    while (j + 1 < k &&
           m.scores[order[j + 1]][col] == m.scores[order[i]][col]) {
      ++j;
    }
    // positions i..j (0-based) share rank mean((i+1)+(j+1))/2
    const double shared = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (size_t t = i; t <= j; ++t) ranks[order[t]] = shared;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

std::vector<double> average_ranks(const ScoreMatrix& m) {
  m.validate();
  const size_t k = m.methods.size();
  const size_t n = m.conditions.size();
  std::vector<double> sums(k, 0.0);
  for (size_t c = 0; c < n; ++c) {
    const auto ranks = column_ranks(m, c);
    for (size_t i = 0; i < k; ++i) sums[i] += ranks[i];
  }
  for (double& s : sums) s /= static_cast<double>(n);
  return sums;
}

RankResult friedman_test(const ScoreMatrix& m, FriedmanVariant variant) {
  m.validate();
  const double k = static_cast<double>(m.methods.size());
  const double n = static_cast<double>(m.conditions.size());

  RankResult res;
  res.methods = m.methods;
  res.avg_rank = average_ranks(m);
  res.n_conditions = static_cast<int>(m.conditions.size());
  res.variant = variant;
  res.df1 = static_cast<int>(k) - 1;

  double sum_r2 = 0.0;
  for (double r : res.avg_rank) sum_r2 += r * r;
  const double chi2 =
      12.0 * n / (k * (k + 1.0)) * (sum_r2 - k * (k + 1.0) * (k + 1.0) / 4.0);

  if (variant == FriedmanVariant::ChiSquare) {
    res.statistic = chi2;
    const boost::math::chi_squared dist(k - 1.0);
    // Chi-square can come out a hair negative from rounding when all ranks
    // are at the null value.
    res.p_value = chi2 <= 0.0
                      ? 1.0
                      : boost::math::cdf(boost::math::complement(dist, chi2));
    return res;
  }

  // Iman-Davenport rescaling. Degenerate when chi2 saturates at N(k-1).
  const double denom = n * (k - 1.0) - chi2;
  res.df1 = static_cast<int>(k) - 1;
  res.df2 = static_cast<int>((k - 1.0) * (n - 1.0));
  if (res.df2 < 1) {
    throw MetricError("Iman-Davenport needs at least two conditions");
  }
  if (denom <= 0.0) {
    res.statistic = std::numeric_limits<double>::infinity();
    res.p_value = 0.0;
    return res;
  }
  const double f_stat = (n - 1.0) * chi2 / denom;
  res.statistic = f_stat;
  const boost::math::fisher_f dist(static_cast<double>(res.df1),
                                   static_cast<double>(res.df2));
  res.p_value = f_stat <= 0.0
                    ? 1.0
                    : boost::math::cdf(boost::math::complement(dist, f_stat));
  return res;
}

DunnResult bonferroni_dunn(const RankResult& ranks, double alpha,
                           const std::string& baseline) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ConfigError("alpha must lie in (0, 1), got " + format_double(alpha));
  }
  const size_t k = ranks.methods.size();
  if (k < 2) throw ValidationError("post-hoc comparison needs two methods");
  const auto it =
      std::find(ranks.methods.begin(), ranks.methods.end(), baseline);
  if (it == ranks.methods.end()) {
    throw ConfigError("baseline method '" + baseline +
                      "' is not in the comparison");
  }
  const size_t base = static_cast<size_t>(it - ranks.methods.begin());
  const double n = static_cast<double>(ranks.n_conditions);

  DunnResult res;
  res.baseline = baseline;
  res.alpha = alpha;
  const double tail = alpha / (2.0 * (static_cast<double>(k) - 1.0));
  const boost::math::normal norm;
  res.q_alpha = boost::math::quantile(boost::math::complement(norm, tail));
  res.critical_difference =
      res.q_alpha * std::sqrt(static_cast<double>(k) *
                              (static_cast<double>(k) + 1.0) / (6.0 * n));
  res.significant.assign(k, false);
  for (size_t i = 0; i < k; ++i) {
    if (i == base) continue;
    res.significant[i] = std::abs(ranks.avg_rank[i] - ranks.avg_rank[base]) >
                         res.critical_difference;
  }
  return res;
}

namespace {

const TraitEval* find_trait(const EvalReport& rep, MoralTrait t) {
  for (const auto& [rt, ev] : rep.traits) {
    if (rt == t) return &ev;
  }
  return nullptr;
}

// One decimal, scores scaled to 0..100 for the text table.
std::string pct(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(1) << v * 100.0;
  return os.str();
}

std::string fixed2(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << v;
  return os.str();
}

std::string pad_left(const std::string& s, size_t width) {
  if (s.size() >= width) return s;
  return std::string(width - s.size(), ' ') + s;
}

std::string pad_right(const std::string& s, size_t width) {
  if (s.size() >= width) return s;
  return s + std::string(width - s.size(), ' ');
}

}  // namespace

ComparisonTable render_comparison_table(
    const std::vector<EvalReport>& reports, const std::string& baseline,
    const std::optional<SotaScores>& sota, double alpha,
    RankGranularity granularity) {
  if (reports.size() < 2 && !sota) {
    throw ValidationError("comparison needs at least two methods");
  }
  if (reports.empty()) {
    throw ValidationError("comparison needs at least one evaluated method");
  }

  // Traits every report evaluated, in canonical label order.
  std::vector<MoralTrait> traits;
  for (MoralTrait t : kClassLabels) {
    bool everywhere = true;
    for (const auto& rep : reports) {
      if (!find_trait(rep, t)) {
        everywhere = false;
        break;
      }
    }
    if (everywhere && sota) {
      bool in_sota = false;
      for (const auto& [st, sv] : sota->per_trait) {
        (void)sv;
        if (st == t) in_sota = true;
      }
      everywhere = in_sota;
    }
    if (everywhere) traits.push_back(t);
  }
  if (traits.empty()) {
    throw ValidationError("no trait was evaluated by every compared method");
  }

  // Published constants carry no folds, so their presence forces the
  // ranking onto per-trait means.
  const bool per_trait = sota.has_value() ||
                         granularity == RankGranularity::PerTrait;

  ScoreMatrix m;
  for (const auto& rep : reports) m.methods.push_back(rep.method);
  if (sota) m.methods.push_back(sota->name);

  if (per_trait) {
    for (MoralTrait t : traits) {
      m.conditions.push_back(std::string(trait_name(t)));
    }
    for (const auto& rep : reports) {
      std::vector<double> row;
      for (MoralTrait t : traits) row.push_back(find_trait(rep, t)->mean_f1);
      m.scores.push_back(std::move(row));
    }
    if (sota) {
      std::vector<double> row;
      for (MoralTrait t : traits) {
        bool found = false;
        double v = 0.0;
        for (const auto& [st, sv] : sota->per_trait) {
          if (st == t) {
            v = sv;
            found = true;
          }
        }
        if (!found) {
          throw ValidationError("published scores miss trait '" +
                                std::string(trait_name(t)) + "'");
        }
        row.push_back(v);
      }
      m.scores.push_back(std::move(row));
    }
  } else {
    // Per-fold columns; every report must agree on the fold count per trait.
    for (MoralTrait t : traits) {
      const size_t folds = find_trait(reports[0], t)->fold_f1.size();
      for (const auto& rep : reports) {
        if (find_trait(rep, t)->fold_f1.size() != folds) {
          throw ValidationError("fold count mismatch for trait '" +
                                std::string(trait_name(t)) +
                                "' between compared methods");
        }
      }
      for (size_t j = 0; j < folds; ++j) {
        m.conditions.push_back(std::string(trait_name(t)) + "/f" +
                               std::to_string(j));
      }
    }
    for (const auto& rep : reports) {
      std::vector<double> row;
      for (MoralTrait t : traits) {
        const auto& f = find_trait(rep, t)->fold_f1;
        row.insert(row.end(), f.begin(), f.end());
      }
      m.scores.push_back(std::move(row));
    }
  }

  ComparisonTable table;
  table.matrix = m;
  table.ranks = friedman_test(m, FriedmanVariant::ChiSquare);
  if (m.methods.size() >= 2) {
    table.vs_baseline = bonferroni_dunn(table.ranks, alpha, baseline);
    if (sota) table.vs_sota = bonferroni_dunn(table.ranks, alpha, sota->name);
  }

  // Per-trait mean for the display regardless of ranking granularity.
  auto trait_mean = [&](size_t method_idx, MoralTrait t) -> double {
    if (method_idx < reports.size()) {
      return find_trait(reports[method_idx], t)->mean_f1;
    }
    for (const auto& [st, sv] : sota->per_trait) {
      if (st == t) return sv;
    }
    return 0.0;
  };

  const size_t k = m.methods.size();
  const size_t base_idx = static_cast<size_t>(
      std::find(m.methods.begin(), m.methods.end(),
                table.vs_baseline ? table.vs_baseline->baseline : baseline) -
      m.methods.begin());

  // Text table: method | trait columns | Avg | Rank.
  std::vector<std::string> cols;
  for (MoralTrait t : traits) cols.push_back(std::string(trait_name(t)));

  std::vector<std::vector<std::string>> cells(k);
  std::vector<std::string> names(k);
  for (size_t i = 0; i < k; ++i) {
    names[i] = m.methods[i];
    double sum = 0.0;
    for (MoralTrait t : traits) {
      const double v = trait_mean(i, t);
      sum += v;
      cells[i].push_back(pct(v));
    }
    cells[i].push_back(pct(sum / static_cast<double>(traits.size())));
    std::string rank = fixed2(table.ranks.avg_rank[i]);
    const bool better_than_base =
        table.vs_baseline && table.vs_baseline->significant[i] &&
        table.ranks.avg_rank[i] < table.ranks.avg_rank[base_idx];
    if (better_than_base) rank += "*";
    if (table.vs_sota) {
      const size_t sota_idx = k - 1;
      if (i != sota_idx && table.vs_sota->significant[i] &&
          table.ranks.avg_rank[i] < table.ranks.avg_rank[sota_idx]) {
        rank += "+";
      }
    }
    cells[i].push_back(rank);
  }

  std::vector<std::string> header;
  header.push_back("method");
  for (const auto& c : cols) header.push_back(c);
  header.push_back("Avg");
  header.push_back("Rank");

  std::vector<size_t> widths(header.size(), 0);
  for (size_t c = 0; c < header.size(); ++c) widths[c] = header[c].size();
  for (size_t i = 0; i < k; ++i) {
    widths[0] = std::max(widths[0], names[i].size());
    for (size_t c = 0; c < cells[i].size(); ++c) {
      widths[c + 1] = std::max(widths[c + 1], cells[i][c].size());
    }
  }

  std::ostringstream text;
  text << pad_right(header[0], widths[0]);
  for (size_t c = 1; c < header.size(); ++c) {
    text << "  " << pad_left(header[c], widths[c]);
  }
  text << "\n";
  for (size_t i = 0; i < k; ++i) {
    text << pad_right(names[i], widths[0]);
    for (size_t c = 0; c < cells[i].size(); ++c) {
      text << "  " << pad_left(cells[i][c], widths[c + 1]);
    }
    text << "\n";
  }
  text << "\nFriedman chi2 = " << format_double(table.ranks.statistic)
       << " (df = " << table.ranks.df1
       << "), p = " << format_double(table.ranks.p_value) << "\n";
  if (table.vs_baseline) {
    text << "critical difference vs '" << table.vs_baseline->baseline
         << "' = " << format_double(table.vs_baseline->critical_difference)
         << " at alpha = " << format_double(alpha) << "\n";
    text << "* ranks significantly better than the baseline\n";
  }
  if (table.vs_sota) {
    text << "+ ranks significantly better than '" << sota->name << "'\n";
  }
  table.text = text.str();

  // CSV mirror with full precision.
  std::string csv;
  {
    std::vector<std::string> h;
    h.push_back("method");
    for (const auto& c : cols) h.push_back(c);
    h.push_back("avg");
    h.push_back("rank");
    h.push_back("beats_baseline");
    h.push_back("beats_published");
    csv += csv_row(h);
    for (size_t i = 0; i < k; ++i) {
      std::vector<std::string> row;
      row.push_back(names[i]);
      double sum = 0.0;
      for (MoralTrait t : traits) {
        const double v = trait_mean(i, t);
        sum += v;
        row.push_back(format_double(v));
      }
      row.push_back(format_double(sum / static_cast<double>(traits.size())));
      row.push_back(format_double(table.ranks.avg_rank[i]));
      const bool star =
          table.vs_baseline && table.vs_baseline->significant[i] &&
          table.ranks.avg_rank[i] < table.ranks.avg_rank[base_idx];
      row.push_back(star ? "1" : "0");
      bool plus = false;
      if (table.vs_sota && i + 1 != k) {
        plus = table.vs_sota->significant[i] &&
               table.ranks.avg_rank[i] < table.ranks.avg_rank[k - 1];
      }
      row.push_back(plus ? "1" : "0");
      csv += csv_row(row);
    }
  }
  table.csv = csv;
  return table;
}

}  // namespace moralkit
