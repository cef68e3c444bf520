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

namespace lancer {

constexpr int kMinRating = 0;
constexpr int kMaxRating = 5;

/// A report request: a multi-faceted information need driving long-form
/// report generation. `request_id` is nonempty and whitespace-free.
struct ReportRequest {
  std::string request_id;
  std::string text;
};

/// One reranking candidate: a document with its first-stage score and
/// 1-based first-stage rank. Ranks within one candidate set form a
/// contiguous 1..k sequence.
struct Candidate {
  std::string doc_id;
  std::string text;
  double first_stage_score = 0.0;
  int first_stage_rank = 0;
};

enum class QuestionOrigin { synthetic, oracle };

std::string origin_name(QuestionOrigin origin);
QuestionOrigin origin_from_name(const std::string& name);

struct SubQuestion {
  int index = 0;  // 0-based, contiguous within a set
  std::string text;
};

/// Ordered sub-questions for one request, either LLM-generated (synthetic)
/// or ground-truth nugget questions (oracle).
struct SubQuestionSet {
  std::string request_id;
  std::vector<SubQuestion> questions;
  QuestionOrigin origin = QuestionOrigin::synthetic;

  int size() const { return static_cast<int>(questions.size()); }
};

/// Dense integer answerability ratings, one row per document and one
/// column per sub-question. Every cell lies in [0,5].
struct RatingMatrix {
  std::string request_id;
  std::vector<std::string> doc_ids;
  int question_count = 0;
  std::vector<int> cells;  // row-major, doc_count x question_count

  int doc_count() const { return static_cast<int>(doc_ids.size()); }
  int rating(int doc, int question) const {
    return cells[static_cast<size_t>(doc) * question_count + question];
  }
  int& rating(int doc, int question) {
    return cells[static_cast<size_t>(doc) * question_count + question];
  }
};

struct RankedEntry {
  std::string doc_id;
  double score = 0.0;
  int rank = 0;  // 1-based, contiguous
};

/// An ordered document list for one request. Score-sorted lists carry
/// non-increasing scores; greedy outputs set `order_is_positional` because
/// their scores are marginal gains and need not be monotone.
struct RankedList {
  std::string request_id;
  std::vector<RankedEntry> entries;
  bool order_is_positional = false;
};

/// Ground-truth nugget-level ratings, used only by evaluation. A document
/// absent from a nugget's map counts as rating 0.
struct NuggetJudgments {
  struct Nugget {
    std::string nugget_id;
    std::map<std::string, int> per_doc;  // doc_id -> rating in [0,5]
  };
  std::string request_id;
  std::vector<Nugget> nuggets;
};

struct ValidationResult {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks every RatingMatrix invariant; violations name the offending
/// cell or row. Invalid data is reported, never thrown.
ValidationResult validate_rating_matrix(const RatingMatrix& m);

/// Checks rank contiguity, doc uniqueness and (for non-positional lists)
/// score monotonicity.
ValidationResult validate_ranked_list(const RankedList& list);

ValidationResult validate_candidate_set(const std::vector<Candidate>& cands);

ValidationResult validate_nugget_judgments(const NuggetJudgments& j);

// Validating factories. Each throws InputError when an invariant fails,
// so everything downstream can assume well-formed values.

ReportRequest make_report_request(std::string request_id, std::string text);

SubQuestionSet make_subquestion_set(std::string request_id,
                                    std::vector<std::string> question_texts,
                                    QuestionOrigin origin);

RatingMatrix make_rating_matrix(std::string request_id,
                                std::vector<std::string> doc_ids,
                                int question_count, std::vector<int> cells);

/// Builds a RankedList from (doc_id, score) pairs already in final order;
/// ranks are assigned 1..n.
RankedList make_ranked_list(std::string request_id,
                            std::vector<std::pair<std::string, double>> docs,
                            bool order_is_positional = false);

NuggetJudgments make_nugget_judgments(
    std::string request_id, std::vector<NuggetJudgments::Nugget> nuggets);

}  // namespace lancer
