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

#include "lancer/question_gen.hpp"

#include "lancer/io.hpp"
#include "lancer/log.hpp"
#include "lancer/text.hpp"

namespace lancer {

std::string render_genq_prompt(const ReportRequest& x,
                               const QuestionGenConfig& cfg) {
  if (cfg.n < 1) throw ConfigError("sub-question count must be >= 1");
  for (const char* placeholder : {"{n}", "{x}"}) {
    if (cfg.prompt_template.find(placeholder) == std::string::npos) {
      throw ConfigError(std::string("question prompt template is missing ") +
                        placeholder);
    }
  }
  return render_template(cfg.prompt_template,
                         {{"{n}", std::to_string(cfg.n)}, {"{x}", x.text}});
}

std::vector<std::string> parse_question_list(const std::string& raw, int n) {
  size_t start = raw.find(kListStartDelimiter);
  size_t end = raw.find(kListEndDelimiter,
                        start == std::string::npos
                            ? 0
                            : start + kListStartDelimiter.size());
  if (start == std::string::npos && end == std::string::npos) {
    throw ParseError("no question list delimiters in model output");
  }
  size_t body_begin =
      start == std::string::npos ? 0 : start + kListStartDelimiter.size();
  size_t body_end = end == std::string::npos ? raw.size() : end;
  std::string body = raw.substr(body_begin, body_end - body_begin);

  std::vector<std::string> questions;
  size_t pos = 0;
  while (pos <= body.size() && static_cast<int>(questions.size()) < n) {
    size_t nl = body.find('\n', pos);
    std::string line =
        body.substr(pos, nl == std::string::npos ? std::string::npos
                                                 : nl - pos);
    pos = nl == std::string::npos ? body.size() + 1 : nl + 1;

    line = trim(line);
    // One leading bullet per line; the prompt asks for bare lines, but
    // models bullet anyway.
    if (line.rfind("- ", 0) == 0) {
      line = trim(line.substr(2));
    } else if (line.rfind("\xE2\x80\xA2", 0) == 0) {  // "•"
      line = trim(line.substr(3));
    }
    if (!line.empty()) questions.push_back(std::move(line));
  }
  if (questions.empty()) {
    throw ParseError("no sub-questions between list delimiters");
  }
  return questions;
}

SubQuestionSet generate_subquestions(const ReportRequest& x,
                                     const QuestionGenConfig& cfg,
                                     Gateway& gateway) {
  std::string prompt = render_genq_prompt(x, cfg);
  ChatRequest req;
  req.user_prompt = std::move(prompt);
  req.max_tokens = cfg.max_tokens;

  std::vector<std::string> texts;
  try {
    ChatResponse resp = gateway.complete(req);
    texts = parse_question_list(resp.text, cfg.n);
  } catch (const GatewayError& e) {
    throw GatewayError("request '" + x.request_id + "': " + e.what(),
                       e.http_status(), e.attempts(), false);
  } catch (const ParseError& e) {
    throw ParseError("request '" + x.request_id + "': " + e.what());
  }
  if (static_cast<int>(texts.size()) < cfg.n) {
    log::warn("request '" + x.request_id + "': parsed " +
              std::to_string(texts.size()) + " of " + std::to_string(cfg.n) +
              " sub-questions");
  }
  return make_subquestion_set(x.request_id, std::move(texts),
                              QuestionOrigin::synthetic);
}

std::vector<SubQuestionSet> load_oracle_questions(const std::string& path) {
  std::vector<SubQuestionSet> sets = read_questions(path);
  for (SubQuestionSet& set : sets) set.origin = QuestionOrigin::oracle;
  return sets;
}

}  // namespace lancer
