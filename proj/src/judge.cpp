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

#include "lancer/judge.hpp"

#include <cctype>

#include "lancer/log.hpp"
#include "lancer/text.hpp"

namespace lancer {

namespace {

void validate_template(const std::string& tmpl) {
  for (const char* placeholder : {"{q}", "{c}"}) {
    if (tmpl.find(placeholder) == std::string::npos) {
      throw ConfigError(std::string("judge prompt template is missing ") +
                        placeholder);
    }
  }
}

}  // namespace

std::string render_judge_prompt(const ReportRequest& x,
                                const std::string& question,
                                const Candidate& d, const JudgeConfig& cfg) {
  validate_template(cfg.prompt_template);
  std::string q_field =
      cfg.prepend_request ? x.text + " " + question : question;
  std::string c_field = d.text;
  if (cfg.doc_char_limit > 0 &&
      c_field.size() > static_cast<size_t>(cfg.doc_char_limit)) {
    c_field.resize(cfg.doc_char_limit);
  }
  return render_template(cfg.prompt_template,
                         {{"{q}", q_field}, {"{c}", c_field}});
}

int parse_rating(const std::string& raw) {
  const auto alnum = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0;
  };
  size_t i = 0;
  while (i < raw.size()) {
    if (!std::isdigit(static_cast<unsigned char>(raw[i]))) {
      ++i;
      continue;
    }
    size_t end = i;
    long value = 0;
    while (end < raw.size() &&
           std::isdigit(static_cast<unsigned char>(raw[end]))) {
      if (value <= kMaxRating) value = value * 10 + (raw[end] - '0');
      ++end;
    }
    bool negative = i > 0 && raw[i - 1] == '-' &&
                    (i < 2 || !alnum(raw[i - 2]));
    bool attached_left = i > 0 && alnum(raw[i - 1]);
    bool attached_right = end < raw.size() && alnum(raw[end]);
    if (attached_left || attached_right) {
      // Part of a word like "q4" or "4th"; keep scanning.
      i = end;
      continue;
    }
    // First standalone integer decides; out of range falls back to 0.
    if (negative || value < kMinRating || value > kMaxRating) return 0;
    return static_cast<int>(value);
  }
  return 0;
}

JudgeResult judge_all(const ReportRequest& x, const SubQuestionSet& qs,
                      const std::vector<Candidate>& cands,
                      const JudgeConfig& cfg, Gateway& gateway) {
  validate_template(cfg.prompt_template);
  if (cands.empty()) {
    throw InputError("request '" + x.request_id + "': no candidates to judge");
  }
  if (qs.questions.empty()) {
    throw InputError("request '" + x.request_id + "': no sub-questions");
  }
  ValidationResult cand_check = validate_candidate_set(cands);
  if (!cand_check.ok()) {
    throw InputError("request '" + x.request_id +
                     "': invalid candidate set: " +
                     cand_check.violations.front());
  }

  const int q_count = qs.size();
  std::vector<ChatRequest> reqs;
  reqs.reserve(cands.size() * q_count);
  for (const Candidate& d : cands) {
    for (const SubQuestion& q : qs.questions) {
      ChatRequest req;
      req.user_prompt = render_judge_prompt(x, q.text, d, cfg);
      req.max_tokens = cfg.max_tokens;
      reqs.push_back(std::move(req));
    }
  }

  std::vector<BatchItem> items = gateway.complete_batch(reqs);

  JudgeResult result;
  std::vector<int> cells(items.size(), 0);
  std::vector<std::string> doc_ids;
  doc_ids.reserve(cands.size());
  for (const Candidate& d : cands) doc_ids.push_back(d.doc_id);

  for (size_t idx = 0; idx < items.size(); ++idx) {
    if (items[idx].ok()) {
      cells[idx] = parse_rating(items[idx].response->text);
    } else {
      size_t doc = idx / q_count;
      size_t question = idx % q_count;
      std::string msg = "request '" + x.request_id + "', doc '" +
                        cands[doc].doc_id + "', question " +
                        std::to_string(question) +
                        ": rating degraded to 0: " + items[idx].error;
      log::warn(msg);
      result.warnings.push_back(std::move(msg));
    }
  }
  result.matrix = make_rating_matrix(x.request_id, std::move(doc_ids), q_count,
                                     std::move(cells));
  return result;
}

}  // namespace lancer
