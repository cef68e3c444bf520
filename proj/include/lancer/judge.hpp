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

#include <string>
#include <string_view>
#include <vector>

#include "lancer/core.hpp"
#include "lancer/gateway.hpp"

namespace lancer {

// Placeholders: {q} = question (request text prepended by default),
// {c} = document context. Escapes are explicit because line breaks and
// trailing spaces are part of the format.
inline constexpr std::string_view kJudgePromptTemplate =
    "Instruction: Determine whether the question can be answered based on "
    "the provided context? Rate the context with on a scale from 0 to 5 "
    "according to the guideline below. Do not write anything except the "
    "rating. \n"
    "\n"
    "Guideline: \n"
    "5: The context is highly relevant, complete, and accurate. \n"
    "4: The context is mostly relevant and complete but may have minor gaps "
    "or inaccuracies.\n"
    "3: The context is partially relevant and complete, with noticeable "
    "gaps or inaccuracies.\n"
    "2: The context has limited relevance and completeness, with "
    "significant gaps or inaccuracies.\n"
    "1: The context is minimally relevant or complete, with substantial "
    "shortcomings.\n"
    "0: The context is not relevant or complete at all. \n"
    "\n"
    "Question: {q} \n"
    "Context: {c} \n"
    "Rating:";

struct JudgeConfig {
  std::string prompt_template = std::string(kJudgePromptTemplate);
  bool prepend_request = true;  // judge against request text + sub-question
  int doc_char_limit = 0;       // 0 = no truncation
  int max_tokens = 8;           // responses are a single rating token
};

/// Fills {q} (request text prepended when configured) and {c} (truncated
/// to doc_char_limit characters when the limit is nonzero).
std::string render_judge_prompt(const ReportRequest& x,
                                const std::string& question,
                                const Candidate& d, const JudgeConfig& cfg);

/// Total rating parser: the first standalone integer token in 0..5 wins;
/// anything else (no integer, out of range, empty) maps to 0.
int parse_rating(const std::string& raw);

struct JudgeResult {
  RatingMatrix matrix;
  std::vector<std::string> warnings;  // one per degraded cell
};

/// Stage 2: judges every (document, sub-question) pair through the
/// gateway's bounded-parallel batch, in deterministic row-major order
/// (documents outer, questions inner). Per-item gateway failures degrade
/// to rating 0 with a logged warning; only configuration errors abort.
JudgeResult judge_all(const ReportRequest& x, const SubQuestionSet& qs,
                      const std::vector<Candidate>& cands,
                      const JudgeConfig& cfg, Gateway& gateway);

}  // namespace lancer
