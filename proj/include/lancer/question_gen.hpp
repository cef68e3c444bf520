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

// Placeholders: {n} = requested sub-question count, {x} = report request.
// Escapes are explicit because line breaks and trailing spaces are part of
// the format.
inline constexpr std::string_view kSubquestionPromptTemplate =
    "Instruction: Given the following report request, write {n} diverse and "
    "non-repeating sub-questions that can help guide the creation of a "
    "focused and comprehensive report. The sub-questions should help break "
    "down the topic into key areas that need to be investigated or "
    "explained. Each sub-question should be short (ideally under 20 words) "
    "and should focus on a single aspect or dimension of the report. \n"
    "\n"
    "Report Request: \n"
    "{x} \n"
    "\n"
    "Output format: \n"
    "- List each sub-question on a new line. Do not number the "
    "sub-questions. \n"
    "- Do not add any comment or explanation.  \n"
    "- Output without adding additional questions after the specified "
    "{n}. \n"
    "Begin with \"<START OF LIST>\" and, when you are finished, output "
    "\"<END OF LIST>\". Never ever add anything else after "
    "\"<END OF LIST>\", my life depends on it!!! \n"
    "\n"
    "Now, generate the {n} sub-questions:";

constexpr std::string_view kListStartDelimiter = "<START OF LIST>";
constexpr std::string_view kListEndDelimiter = "<END OF LIST>";

struct QuestionGenConfig {
  int n = 2;  // requested sub-question count
  std::string prompt_template = std::string(kSubquestionPromptTemplate);
  int max_tokens = 512;
};

/// Fills {n} and {x} into the template. Throws ConfigError when a
/// placeholder is missing.
std::string render_genq_prompt(const ReportRequest& x,
                               const QuestionGenConfig& cfg);

/// Extracts the delimited question list from raw model output: takes the
/// text between the first start and end delimiters, splits on newlines,
/// strips a single leading "- " or bullet per line, drops empties and
/// keeps at most n lines. Throws ParseError when nothing parseable
/// remains.
std::vector<std::string> parse_question_list(const std::string& raw, int n);

/// Stage 1: render -> complete -> parse. Errors are tagged with the
/// request id; fewer than n parsed questions logs a warning.
SubQuestionSet generate_subquestions(const ReportRequest& x,
                                     const QuestionGenConfig& cfg,
                                     Gateway& gateway);

/// Loads ground-truth nugget questions from a questions JSONL file and
/// tags every set as oracle.
std::vector<SubQuestionSet> load_oracle_questions(const std::string& path);

}  // namespace lancer
