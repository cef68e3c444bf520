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

#pragma once

#include <map>
#include <string>
#include <vector>

#include "lancer/core.hpp"

namespace lancer {

enum class Strategy { sum, sum_tau, rrf, greedy_sum, greedy_alpha, greedy_cov };

Strategy strategy_from_name(const std::string& name);
std::string strategy_name(Strategy s);

struct StrategyConfig {
  Strategy strategy = Strategy::sum;
  int tau = 3;            // rating threshold for cover-style strategies
  double alpha = 0.5;     // redundancy penalty for greedy_alpha
  int kappa = 60;         // RRF constant
  int output_depth = 100;
};

void validate_strategy_config(const StrategyConfig& cfg);

using ScoreMap = std::map<std::string, double>;
using FirstStageRanks = std::map<std::string, int>;

/// score(d) = sum of the document's ratings across sub-questions.
ScoreMap score_sum(const RatingMatrix& m);

/// Like score_sum, but only ratings >= tau contribute.
ScoreMap score_sum_tau(const RatingMatrix& m, int tau);

/// Reciprocal rank fusion over one per-question ranking each: documents
/// are ranked per question by descending rating (ties by ascending
/// first-stage rank, then doc_id) and score(d) = sum_j 1/(kappa + rank_j).
ScoreMap score_rrf(const RatingMatrix& m, int kappa,
                   const FirstStageRanks& first_stage_ranks);

// Set utilities over an (ordered, for utility_alpha) document list Z drawn
// from the matrix. All three return 0 for the empty list.

/// U(Z) = sum_j max_{d in Z} rating(d, j).
double utility_sum(const std::vector<std::string>& docs,
                   const RatingMatrix& m);

/// Order-sensitive redundancy-decayed cover: each document's covered
/// questions gain (1-alpha)^(number of earlier documents covering them).
double utility_alpha(const std::vector<std::string>& docs,
                     const RatingMatrix& m, int tau, double alpha);

/// Number of questions covered at >= tau by at least one document in Z.
double utility_cov(const std::vector<std::string>& docs, const RatingMatrix& m,
                   int tau);

enum class GreedyUtility { sum, alpha, cov };

/// Iteratively appends the document with the strictly greatest marginal
/// utility gain (ties by ascending first-stage rank, then doc_id). Once
/// every remaining gain is zero, the rest follow in descending singleton
/// utility. Entry scores record the marginal gain for greedily chosen
/// documents and the singleton utility for the appended tail, so the
/// output is positional.
RankedList greedy_select(const RatingMatrix& m, GreedyUtility utility,
                         const StrategyConfig& cfg,
                         const FirstStageRanks& first_stage_ranks);

/// Dispatches to the configured strategy, appends first-stage documents
/// missing from the matrix after all scored documents (in first-stage
/// order, score 0), and truncates to output_depth. A matrix document
/// absent from the first stage is an input error.
RankedList rerank(const RatingMatrix& m, const StrategyConfig& cfg,
                  const RankedList& first_stage);

/// Copy of the matrix with every rating below tau zeroed; parameter-sweep
/// plumbing for strategies without a native threshold.
RatingMatrix apply_rating_threshold(const RatingMatrix& m, int tau);

}  // namespace lancer
