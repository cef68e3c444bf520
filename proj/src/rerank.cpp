// Copyright 2026 The LANCER Authors.
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

#include "lancer/rerank.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "lancer/errors.hpp"

namespace lancer {

namespace {

// Floating-point dust must not extend the greedy phase for the
// real-valued utility; integer utilities stop at exactly zero.
constexpr double kAlphaGainEpsilon = 1e-12;

std::unordered_map<std::string, size_t> row_index(const RatingMatrix& m) {
  std::unordered_map<std::string, size_t> idx;
  idx.reserve(m.doc_ids.size());
  for (size_t i = 0; i < m.doc_ids.size(); ++i) idx.emplace(m.doc_ids[i], i);
  return idx;
}

std::vector<size_t> resolve_rows(const std::vector<std::string>& docs,
                                 const RatingMatrix& m) {
  auto idx = row_index(m);
  std::vector<size_t> rows;
  rows.reserve(docs.size());
  for (const std::string& d : docs) {
    auto it = idx.find(d);
    if (it == idx.end()) {
      throw InputError("doc '" + d + "' is not in the rating matrix");
    }
    rows.push_back(it->second);
  }
  return rows;
}

double utility_sum_rows(const std::vector<size_t>& rows,
                        const RatingMatrix& m) {
  long total = 0;
  for (int j = 0; j < m.question_count; ++j) {
    int best = 0;
    for (size_t row : rows) {
      best = std::max(best, m.rating(static_cast<int>(row), j));
    }
    total += best;
  }
  return static_cast<double>(total);
}

double utility_cov_rows(const std::vector<size_t>& rows, const RatingMatrix& m,
                        int tau) {
  long covered = 0;
  for (int j = 0; j < m.question_count; ++j) {
    for (size_t row : rows) {
      if (m.rating(static_cast<int>(row), j) >= tau) {
        ++covered;
        break;
      }
    }
  }
  return static_cast<double>(covered);
}

double utility_alpha_rows(const std::vector<size_t>& rows,
                          const RatingMatrix& m, int tau, double alpha) {
  std::vector<int> cover_count(m.question_count, 0);
  double total = 0.0;
  for (size_t row : rows) {
    for (int j = 0; j < m.question_count; ++j) {
      if (m.rating(static_cast<int>(row), j) >= tau) {
        total += std::pow(1.0 - alpha, cover_count[j]);
        ++cover_count[j];
      }
    }
  }
  return total;
}

int rank_of(const FirstStageRanks& ranks, const std::string& doc) {
  auto it = ranks.find(doc);
  if (it == ranks.end()) {
    throw InputError("doc '" + doc + "' has no first-stage rank");
  }
  return it->second;
}

// Shared tie order: ascending first-stage rank, then lexicographic doc_id.
bool tie_before(const FirstStageRanks& ranks, const std::string& a,
                const std::string& b) {
  int ra = rank_of(ranks, a);
  int rb = rank_of(ranks, b);
  if (ra != rb) return ra < rb;
  return a < b;
}

}  // namespace

Strategy strategy_from_name(const std::string& name) {
  if (name == "sum") return Strategy::sum;
  if (name == "sum_tau") return Strategy::sum_tau;
  if (name == "rrf") return Strategy::rrf;
  if (name == "greedy_sum") return Strategy::greedy_sum;
  if (name == "greedy_alpha") return Strategy::greedy_alpha;
  if (name == "greedy_cov") return Strategy::greedy_cov;
  throw ConfigError("unknown strategy '" + name +
                    "' (expected sum, sum_tau, rrf, greedy_sum, "
                    "greedy_alpha or greedy_cov)");
}

std::string strategy_name(Strategy s) {
  switch (s) {
    case Strategy::sum: return "sum";
    case Strategy::sum_tau: return "sum_tau";
    case Strategy::rrf: return "rrf";
    case Strategy::greedy_sum: return "greedy_sum";
    case Strategy::greedy_alpha: return "greedy_alpha";
    case Strategy::greedy_cov: return "greedy_cov";
  }
  throw ConfigError("unknown strategy enum value");
}

void validate_strategy_config(const StrategyConfig& cfg) {
  if (cfg.tau < kMinRating || cfg.tau > kMaxRating) {
    throw ConfigError("tau must be in [0,5], got " + std::to_string(cfg.tau));
  }
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) {
    throw ConfigError("alpha must be strictly between 0 and 1");
  }
  if (cfg.kappa < 1) throw ConfigError("kappa must be >= 1");
  if (cfg.output_depth < 1) throw ConfigError("output_depth must be >= 1");
}

ScoreMap score_sum(const RatingMatrix& m) {
  ScoreMap scores;
  for (int i = 0; i < m.doc_count(); ++i) {
    long total = 0;
    for (int j = 0; j < m.question_count; ++j) total += m.rating(i, j);
    scores[m.doc_ids[i]] = static_cast<double>(total);
  }
  return scores;
}

ScoreMap score_sum_tau(const RatingMatrix& m, int tau) {
  ScoreMap scores;
  for (int i = 0; i < m.doc_count(); ++i) {
    long total = 0;
    for (int j = 0; j < m.question_count; ++j) {
      int r = m.rating(i, j);
      if (r >= tau) total += r;
    }
    scores[m.doc_ids[i]] = static_cast<double>(total);
  }
  return scores;
}

ScoreMap score_rrf(const RatingMatrix& m, int kappa,
                   const FirstStageRanks& first_stage_ranks) {
  ScoreMap scores;
  for (const std::string& d : m.doc_ids) {
    rank_of(first_stage_ranks, d);  // precondition: every doc has a rank
    scores[d] = 0.0;
  }
  std::vector<int> order(m.doc_count());
  for (int j = 0; j < m.question_count; ++j) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      int ra = m.rating(a, j);
      int rb = m.rating(b, j);
      if (ra != rb) return ra > rb;
      return tie_before(first_stage_ranks, m.doc_ids[a], m.doc_ids[b]);
    });
    for (size_t pos = 0; pos < order.size(); ++pos) {
      scores[m.doc_ids[order[pos]]] +=
          1.0 / (kappa + static_cast<double>(pos + 1));
    }
  }
  return scores;
}

double utility_sum(const std::vector<std::string>& docs,
                   const RatingMatrix& m) {
  return utility_sum_rows(resolve_rows(docs, m), m);
}

double utility_alpha(const std::vector<std::string>& docs,
                     const RatingMatrix& m, int tau, double alpha) {
  return utility_alpha_rows(resolve_rows(docs, m), m, tau, alpha);
}

double utility_cov(const std::vector<std::string>& docs, const RatingMatrix& m,
                   int tau) {
  return utility_cov_rows(resolve_rows(docs, m), m, tau);
}

RankedList greedy_select(const RatingMatrix& m, GreedyUtility utility,
                         const StrategyConfig& cfg,
                         const FirstStageRanks& first_stage_ranks) {
  validate_strategy_config(cfg);
  for (const std::string& d : m.doc_ids) rank_of(first_stage_ranks, d);

  auto evaluate = [&](const std::vector<size_t>& rows) {
    switch (utility) {
      case GreedyUtility::sum: return utility_sum_rows(rows, m);
      case GreedyUtility::alpha:
        return utility_alpha_rows(rows, m, cfg.tau, cfg.alpha);
      case GreedyUtility::cov: return utility_cov_rows(rows, m, cfg.tau);
    }
    return 0.0;
  };
  const double stop_epsilon =
      utility == GreedyUtility::alpha ? kAlphaGainEpsilon : 0.0;

  std::vector<size_t> remaining(m.doc_count());
  std::iota(remaining.begin(), remaining.end(), 0);
  std::vector<size_t> chosen;
  std::vector<std::pair<std::string, double>> out;
  double current = 0.0;

  while (!remaining.empty()) {
    size_t best_pos = 0;
    double best_gain = 0.0;
    bool have_best = false;
    std::vector<size_t> trial = chosen;
    trial.push_back(0);
    for (size_t pos = 0; pos < remaining.size(); ++pos) {
      trial.back() = remaining[pos];
      double gain = evaluate(trial) - current;
      if (!have_best || gain > best_gain ||
          (gain == best_gain &&
           tie_before(first_stage_ranks, m.doc_ids[remaining[pos]],
                      m.doc_ids[remaining[best_pos]]))) {
        best_pos = pos;
        best_gain = gain;
        have_best = true;
      }
    }
    if (best_gain <= stop_epsilon) break;  // gains exhausted

    size_t row = remaining[best_pos];
    chosen.push_back(row);
    out.emplace_back(m.doc_ids[row], best_gain);
    current = evaluate(chosen);
    remaining.erase(remaining.begin() + best_pos);
  }

  // Remaining documents carry zero marginal gain; order them by
  // descending singleton utility, same tie order.
  std::vector<std::pair<size_t, double>> tail;
  tail.reserve(remaining.size());
  for (size_t row : remaining) {
    tail.emplace_back(row, evaluate({row}));
  }
  std::sort(tail.begin(), tail.end(), [&](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return tie_before(first_stage_ranks, m.doc_ids[a.first],
                      m.doc_ids[b.first]);
  });
  for (const auto& [row, singleton] : tail) {
    out.emplace_back(m.doc_ids[row], singleton);
  }

  return make_ranked_list(m.request_id, std::move(out),
                          /*order_is_positional=*/true);
}

RankedList rerank(const RatingMatrix& m, const StrategyConfig& cfg,
                  const RankedList& first_stage) {
  validate_strategy_config(cfg);
  if (!first_stage.request_id.empty() &&
      first_stage.request_id != m.request_id) {
    throw InputError("rating matrix request '" + m.request_id +
                     "' does not match first-stage request '" +
                     first_stage.request_id + "'");
  }

  FirstStageRanks fs_ranks;
  for (const RankedEntry& e : first_stage.entries) {
    fs_ranks[e.doc_id] = e.rank;
  }
  auto in_matrix = row_index(m);
  for (const std::string& d : m.doc_ids) {
    if (!fs_ranks.count(d)) {
      throw InputError("judged doc '" + d +
                       "' is missing from the first-stage run for request '" +
                       m.request_id + "'");
    }
  }

  std::vector<std::pair<std::string, double>> out;
  bool positional = false;

  switch (cfg.strategy) {
    case Strategy::sum:
    case Strategy::sum_tau:
    case Strategy::rrf: {
      ScoreMap scores;
      if (cfg.strategy == Strategy::sum) {
        scores = score_sum(m);
      } else if (cfg.strategy == Strategy::sum_tau) {
        scores = score_sum_tau(m, cfg.tau);
      } else {
        scores = score_rrf(m, cfg.kappa, fs_ranks);
      }
      std::vector<std::string> docs = m.doc_ids;
      std::sort(docs.begin(), docs.end(),
                [&](const std::string& a, const std::string& b) {
                  double sa = scores.at(a);
                  double sb = scores.at(b);
                  if (sa != sb) return sa > sb;
                  return tie_before(fs_ranks, a, b);
                });
      for (const std::string& d : docs) out.emplace_back(d, scores.at(d));
      break;
    }
    case Strategy::greedy_sum:
    case Strategy::greedy_alpha:
    case Strategy::greedy_cov: {
      GreedyUtility utility =
          cfg.strategy == Strategy::greedy_sum    ? GreedyUtility::sum
          : cfg.strategy == Strategy::greedy_alpha ? GreedyUtility::alpha
                                                   : GreedyUtility::cov;
      RankedList greedy = greedy_select(m, utility, cfg, fs_ranks);
      for (const RankedEntry& e : greedy.entries) {
        out.emplace_back(e.doc_id, e.score);
      }
      positional = true;
      break;
    }
  }

  // First-stage documents never judged go after every scored document,
  // in first-stage order.
  for (const RankedEntry& e : first_stage.entries) {
    if (!in_matrix.count(e.doc_id)) out.emplace_back(e.doc_id, 0.0);
  }

  if (out.size() > static_cast<size_t>(cfg.output_depth)) {
    out.resize(cfg.output_depth);
  }
  return make_ranked_list(m.request_id, std::move(out), positional);
}

RatingMatrix apply_rating_threshold(const RatingMatrix& m, int tau) {
  RatingMatrix copy = m;
  for (int& cell : copy.cells) {
    if (cell < tau) cell = 0;
  }
  return copy;
}

}  // namespace lancer
