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

#include "lancer/core.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <unordered_set>

#include "lancer/errors.hpp"

namespace lancer {

namespace {

bool has_whitespace(const std::string& s) {
  return std::any_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isspace(c) != 0;
  });
}

std::string trimmed(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string origin_name(QuestionOrigin origin) {
  return origin == QuestionOrigin::synthetic ? "synthetic" : "oracle";
}

QuestionOrigin origin_from_name(const std::string& name) {
  if (name == "synthetic") return QuestionOrigin::synthetic;
  if (name == "oracle") return QuestionOrigin::oracle;
  throw InputError("unknown question origin '" + name + "'");
}

ValidationResult validate_rating_matrix(const RatingMatrix& m) {
  ValidationResult res;
  if (m.question_count < 0) {
    res.violations.push_back("question_count is negative");
    return res;
  }
  const size_t expected =
      m.doc_ids.size() * static_cast<size_t>(m.question_count);
  if (m.cells.size() != expected) {
    res.violations.push_back(
        "matrix has " + std::to_string(m.cells.size()) + " cells, expected " +
        std::to_string(expected) + " (" + std::to_string(m.doc_ids.size()) +
        " docs x " + std::to_string(m.question_count) + " questions)");
    return res;
  }
  std::unordered_set<std::string> seen;
  for (size_t i = 0; i < m.doc_ids.size(); ++i) {
    if (m.doc_ids[i].empty()) {
      res.violations.push_back("row " + std::to_string(i) +
                               ": empty doc_id");
    } else if (!seen.insert(m.doc_ids[i]).second) {
      res.violations.push_back("row " + std::to_string(i) +
                               ": duplicate doc_id '" + m.doc_ids[i] + "'");
    }
    for (int j = 0; j < m.question_count; ++j) {
      int r = m.cells[i * m.question_count + j];
      if (r < kMinRating || r > kMaxRating) {
        res.violations.push_back(
            "cell (doc '" + m.doc_ids[i] + "', question " + std::to_string(j) +
            "): rating " + std::to_string(r) + " outside [0,5]");
      }
    }
  }
  return res;
}

ValidationResult validate_ranked_list(const RankedList& list) {
  ValidationResult res;
  std::unordered_set<std::string> seen;
  for (size_t i = 0; i < list.entries.size(); ++i) {
    const RankedEntry& e = list.entries[i];
    if (e.rank != static_cast<int>(i) + 1) {
      res.violations.push_back("entry " + std::to_string(i) + ": rank " +
                               std::to_string(e.rank) + ", expected " +
                               std::to_string(i + 1));
    }
    if (e.doc_id.empty()) {
      res.violations.push_back("entry " + std::to_string(i) + ": empty doc_id");
    } else if (!seen.insert(e.doc_id).second) {
      res.violations.push_back("entry " + std::to_string(i) +
                               ": duplicate doc_id '" + e.doc_id + "'");
    }
    if (!list.order_is_positional && i > 0 &&
        list.entries[i - 1].score < e.score) {
      res.violations.push_back("entry " + std::to_string(i) + ": score " +
                               std::to_string(e.score) +
                               " increases over previous rank");
    }
  }
  return res;
}

ValidationResult validate_candidate_set(const std::vector<Candidate>& cands) {
  ValidationResult res;
  std::unordered_set<std::string> seen;
  std::set<int> ranks;
  for (size_t i = 0; i < cands.size(); ++i) {
    const Candidate& c = cands[i];
    if (c.doc_id.empty()) {
      res.violations.push_back("candidate " + std::to_string(i) +
                               ": empty doc_id");
    } else if (!seen.insert(c.doc_id).second) {
      res.violations.push_back("candidate " + std::to_string(i) +
                               ": duplicate doc_id '" + c.doc_id + "'");
    }
    ranks.insert(c.first_stage_rank);
  }
  if (!cands.empty()) {
    if (*ranks.begin() != 1 ||
        *ranks.rbegin() != static_cast<int>(cands.size()) ||
        ranks.size() != cands.size()) {
      res.violations.push_back("first_stage_rank values are not a contiguous "
                               "1.." +
                               std::to_string(cands.size()) + " sequence");
    }
  }
  return res;
}

ValidationResult validate_nugget_judgments(const NuggetJudgments& j) {
  ValidationResult res;
  std::unordered_set<std::string> seen;
  for (const auto& n : j.nuggets) {
    if (n.nugget_id.empty()) {
      res.violations.push_back("empty nugget_id");
    } else if (!seen.insert(n.nugget_id).second) {
      res.violations.push_back("duplicate nugget_id '" + n.nugget_id + "'");
    }
    for (const auto& [doc, rating] : n.per_doc) {
      if (rating < kMinRating || rating > kMaxRating) {
        res.violations.push_back("nugget '" + n.nugget_id + "', doc '" + doc +
                                 "': rating " + std::to_string(rating) +
                                 " outside [0,5]");
      }
    }
  }
  return res;
}

ReportRequest make_report_request(std::string request_id, std::string text) {
  if (request_id.empty()) throw InputError("request_id is empty");
  if (has_whitespace(request_id)) {
    throw InputError("request_id '" + request_id + "' contains whitespace");
  }
  if (text.empty()) {
    throw InputError("request '" + request_id + "' has empty text");
  }
  return ReportRequest{std::move(request_id), std::move(text)};
}

SubQuestionSet make_subquestion_set(std::string request_id,
                                    std::vector<std::string> question_texts,
                                    QuestionOrigin origin) {
  SubQuestionSet set;
  set.request_id = std::move(request_id);
  set.origin = origin;
  for (size_t i = 0; i < question_texts.size(); ++i) {
    std::string t = trimmed(question_texts[i]);
    if (t.empty()) {
      throw InputError("request '" + set.request_id + "': sub-question " +
                       std::to_string(i) + " is empty after trimming");
    }
    set.questions.push_back({static_cast<int>(i), std::move(t)});
  }
  return set;
}

RatingMatrix make_rating_matrix(std::string request_id,
                                std::vector<std::string> doc_ids,
                                int question_count, std::vector<int> cells) {
  RatingMatrix m;
  m.request_id = std::move(request_id);
  m.doc_ids = std::move(doc_ids);
  m.question_count = question_count;
  m.cells = std::move(cells);
  ValidationResult res = validate_rating_matrix(m);
  if (!res.ok()) {
    throw InputError("invalid rating matrix for request '" + m.request_id +
                     "': " + res.violations.front());
  }
  return m;
}

RankedList make_ranked_list(std::string request_id,
                            std::vector<std::pair<std::string, double>> docs,
                            bool order_is_positional) {
  RankedList list;
  list.request_id = std::move(request_id);
  list.order_is_positional = order_is_positional;
  list.entries.reserve(docs.size());
  for (size_t i = 0; i < docs.size(); ++i) {
    list.entries.push_back(
        {std::move(docs[i].first), docs[i].second, static_cast<int>(i) + 1});
  }
  ValidationResult res = validate_ranked_list(list);
  if (!res.ok()) {
    throw InputError("invalid ranked list for request '" + list.request_id +
                     "': " + res.violations.front());
  }
  return list;
}

NuggetJudgments make_nugget_judgments(
    std::string request_id, std::vector<NuggetJudgments::Nugget> nuggets) {
  NuggetJudgments j;
  j.request_id = std::move(request_id);
  j.nuggets = std::move(nuggets);
  ValidationResult res = validate_nugget_judgments(j);
  if (!res.ok()) {
    throw InputError("invalid nugget judgments for request '" + j.request_id +
                     "': " + res.violations.front());
  }
  return j;
}

}  // namespace lancer
