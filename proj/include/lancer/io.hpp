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
#include <vector>

#include "lancer/core.hpp"

namespace lancer {

// Readers validate strictly and throw ParseError with a line number;
// out-of-range values are rejected, never clamped. Writers emit one JSON
// object per line with keys in the documented order (see docs/FORMATS.md).

struct CorpusDoc {
  std::string doc_id;
  std::string text;
};

/// Reads a 6-column TREC run file ("request Q0 doc rank score tag"),
/// grouping by request in order of first appearance and verifying that
/// each request's ranks form a contiguous 1..k sequence.
std::vector<RankedList> read_run(const std::string& path);

/// Writes lists in TREC format with scores at 6 decimal places.
/// Positional lists get synthetic strictly-decreasing scores
/// (depth - rank + 1); their true per-entry scores are preserved in a
/// "<path>.gains.jsonl" sidecar.
void write_run(const std::vector<RankedList>& lists, const std::string& run_tag,
               const std::string& path);

std::vector<ReportRequest> read_topics(const std::string& path);
void write_topics(const std::vector<ReportRequest>& topics,
                  const std::string& path);

std::vector<CorpusDoc> read_corpus(const std::string& path);
void write_corpus(const std::vector<CorpusDoc>& docs, const std::string& path);

std::vector<SubQuestionSet> read_questions(const std::string& path);
void write_questions(const std::vector<SubQuestionSet>& sets,
                     const std::string& path);

std::vector<RatingMatrix> read_ratings(const std::string& path);
void write_ratings(const std::vector<RatingMatrix>& matrices,
                   const std::string& path);

std::vector<NuggetJudgments> read_nuggets(const std::string& path);
void write_nuggets(const std::vector<NuggetJudgments>& judgments,
                   const std::string& path);

/// TREC score formatting, shared with tests: 6 decimal places.
std::string format_run_score(double score);

}  // namespace lancer
