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

#include "lancer/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "lancer/errors.hpp"

namespace lancer {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::ifstream open_for_read(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  return out;
}

/// Streams a JSONL file: parses each non-empty line and hands it to the
/// callback with its 1-based line number.
void for_each_record(const std::string& path,
                     const std::function<void(const json&, int)>& fn) {
  std::ifstream in = open_for_read(path);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::exception& e) {
      throw ParseError("'" + path + "': " + e.what(), line_no);
    }
    fn(record, line_no);
  }
}

/// Strict schema check: the record must be an object holding exactly the
/// given keys.
void require_keys(const json& record, const std::vector<std::string>& keys,
                  const std::string& path, int line) {
  if (!record.is_object()) {
    throw ParseError("'" + path + "': record is not a JSON object", line);
  }
  for (const std::string& key : keys) {
    if (!record.contains(key)) {
      throw ParseError("'" + path + "': missing key '" + key + "'", line);
    }
  }
  for (const auto& [key, value] : record.items()) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ParseError("'" + path + "': unexpected key '" + key + "'", line);
    }
  }
}

std::string get_string(const json& record, const char* key,
                       const std::string& path, int line) {
  const json& v = record.at(key);
  if (!v.is_string()) {
    throw ParseError("'" + path + "': key '" + std::string(key) +
                         "' is not a string",
                     line);
  }
  return v.get<std::string>();
}

int get_rating(const json& v, const std::string& path, int line) {
  if (!v.is_number_integer()) {
    throw ParseError("'" + path + "': rating is not an integer", line);
  }
  auto r = v.get<long>();
  if (r < kMinRating || r > kMaxRating) {
    throw ParseError("'" + path + "': rating " + std::to_string(r) +
                         " outside [0,5]",
                     line);
  }
  return static_cast<int>(r);
}

}  // namespace

std::string format_run_score(double score) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", score);
  return buf;
}

// ---------------------------------------------------------------------------
// TREC run files

std::vector<RankedList> read_run(const std::string& path) {
  std::ifstream in = open_for_read(path);
  struct Pending {
    std::vector<RankedEntry> entries;
    std::unordered_set<std::string> docs;
  };
  std::vector<std::string> order;
  std::unordered_map<std::string, Pending> pending;

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    std::string request_id, q0, doc_id, rank_str, score_str, tag, extra;
    if (!(fields >> request_id >> q0 >> doc_id >> rank_str >> score_str >>
          tag) ||
        (fields >> extra)) {
      throw ParseError("'" + path + "': expected 6 columns", line_no);
    }
    if (q0 != "Q0") {
      throw ParseError("'" + path + "': second column must be 'Q0', got '" +
                           q0 + "'",
                       line_no);
    }
    int rank = 0;
    double score = 0.0;
    try {
      size_t used = 0;
      rank = std::stoi(rank_str, &used);
      if (used != rank_str.size()) throw std::invalid_argument(rank_str);
      score = std::stod(score_str, &used);
      if (used != score_str.size()) throw std::invalid_argument(score_str);
    } catch (const std::exception&) {
      throw ParseError("'" + path + "': non-numeric rank or score", line_no);
    }
    auto [it, inserted] = pending.try_emplace(request_id);
    if (inserted) order.push_back(request_id);
    if (!it->second.docs.insert(doc_id).second) {
      throw ParseError("'" + path + "': duplicate doc '" + doc_id +
                           "' for request '" + request_id + "'",
                       line_no);
    }
    it->second.entries.push_back({doc_id, score, rank});
  }

  std::vector<RankedList> lists;
  lists.reserve(order.size());
  for (const std::string& request_id : order) {
    Pending& p = pending.at(request_id);
    std::sort(p.entries.begin(), p.entries.end(),
              [](const RankedEntry& a, const RankedEntry& b) {
                return a.rank < b.rank;
              });
    for (size_t i = 0; i < p.entries.size(); ++i) {
      if (p.entries[i].rank != static_cast<int>(i) + 1) {
        throw ParseError("'" + path + "': request '" + request_id +
                         "' ranks are not contiguous from 1 (found rank " +
                         std::to_string(p.entries[i].rank) + " at position " +
                         std::to_string(i + 1) + ")");
      }
    }
    RankedList list;
    list.request_id = request_id;
    list.entries = std::move(p.entries);
    // Greedy runs round-trip as positional: their rank order is the
    // ordering, scores need not be monotone.
    for (size_t i = 1; i < list.entries.size(); ++i) {
      if (list.entries[i - 1].score < list.entries[i].score) {
        list.order_is_positional = true;
        break;
      }
    }
    lists.push_back(std::move(list));
  }
  return lists;
}

void write_run(const std::vector<RankedList>& lists, const std::string& run_tag,
               const std::string& path) {
  std::ofstream out = open_for_write(path);
  bool any_positional = false;
  for (const RankedList& list : lists) {
    const int depth = static_cast<int>(list.entries.size());
    for (const RankedEntry& e : list.entries) {
      double score = e.score;
      if (list.order_is_positional) {
        score = static_cast<double>(depth - e.rank + 1);
        any_positional = true;
      }
      out << list.request_id << " Q0 " << e.doc_id << ' ' << e.rank << ' '
          << format_run_score(score) << ' ' << run_tag << '\n';
    }
  }
  if (any_positional) {
    std::ofstream sidecar = open_for_write(path + ".gains.jsonl");
    for (const RankedList& list : lists) {
      if (!list.order_is_positional) continue;
      for (const RankedEntry& e : list.entries) {
        ordered_json record = {{"request_id", list.request_id},
                               {"doc_id", e.doc_id},
                               {"rank", e.rank},
                               {"gain", e.score}};
        sidecar << record.dump() << '\n';
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Topics JSONL: {request_id, text}

std::vector<ReportRequest> read_topics(const std::string& path) {
  std::vector<ReportRequest> topics;
  std::unordered_set<std::string> seen;
  for_each_record(path, [&](const json& record, int line) {
    require_keys(record, {"request_id", "text"}, path, line);
    std::string rid = get_string(record, "request_id", path, line);
    std::string text = get_string(record, "text", path, line);
    if (!seen.insert(rid).second) {
      throw ParseError("'" + path + "': duplicate request_id '" + rid + "'",
                       line);
    }
    try {
      topics.push_back(make_report_request(std::move(rid), std::move(text)));
    } catch (const InputError& e) {
      throw ParseError("'" + path + "': " + e.what(), line);
    }
  });
  return topics;
}

void write_topics(const std::vector<ReportRequest>& topics,
                  const std::string& path) {
  std::ofstream out = open_for_write(path);
  for (const ReportRequest& t : topics) {
    ordered_json record = {{"request_id", t.request_id}, {"text", t.text}};
    out << record.dump() << '\n';
  }
}

// ---------------------------------------------------------------------------
// Corpus JSONL: {doc_id, text}

std::vector<CorpusDoc> read_corpus(const std::string& path) {
  std::vector<CorpusDoc> docs;
  std::unordered_set<std::string> seen;
  for_each_record(path, [&](const json& record, int line) {
    require_keys(record, {"doc_id", "text"}, path, line);
    CorpusDoc doc{get_string(record, "doc_id", path, line),
                  get_string(record, "text", path, line)};
    if (doc.doc_id.empty()) {
      throw ParseError("'" + path + "': empty doc_id", line);
    }
    if (!seen.insert(doc.doc_id).second) {
      throw ParseError("'" + path + "': duplicate doc_id '" + doc.doc_id + "'",
                       line);
    }
    docs.push_back(std::move(doc));
  });
  return docs;
}

void write_corpus(const std::vector<CorpusDoc>& docs,
                  const std::string& path) {
  std::ofstream out = open_for_write(path);
  for (const CorpusDoc& d : docs) {
    ordered_json record = {{"doc_id", d.doc_id}, {"text", d.text}};
    out << record.dump() << '\n';
  }
}

// ---------------------------------------------------------------------------
// Questions JSONL: {request_id, origin, questions: [{index, text}]}

std::vector<SubQuestionSet> read_questions(const std::string& path) {
  std::vector<SubQuestionSet> sets;
  std::unordered_set<std::string> seen;
  for_each_record(path, [&](const json& record, int line) {
    require_keys(record, {"request_id", "origin", "questions"}, path, line);
    SubQuestionSet set;
    set.request_id = get_string(record, "request_id", path, line);
    try {
      set.origin = origin_from_name(get_string(record, "origin", path, line));
    } catch (const InputError& e) {
      throw ParseError("'" + path + "': " + e.what(), line);
    }
    if (!seen.insert(set.request_id).second) {
      throw ParseError("'" + path + "': duplicate request_id '" +
                           set.request_id + "'",
                       line);
    }
    const json& questions = record.at("questions");
    if (!questions.is_array() || questions.empty()) {
      throw ParseError("'" + path + "': 'questions' must be a non-empty array",
                       line);
    }
    std::set<int> indices;
    for (const json& q : questions) {
      require_keys(q, {"index", "text"}, path, line);
      if (!q.at("index").is_number_integer()) {
        throw ParseError("'" + path + "': question index is not an integer",
                         line);
      }
      int index = q.at("index").get<int>();
      if (!indices.insert(index).second) {
        throw ParseError("'" + path + "': duplicate question index " +
                             std::to_string(index),
                         line);
      }
      set.questions.push_back({index, get_string(q, "text", path, line)});
    }
    if (*indices.begin() != 0 ||
        *indices.rbegin() != static_cast<int>(indices.size()) - 1) {
      throw ParseError("'" + path + "': question indices must be 0.." +
                           std::to_string(set.questions.size() - 1) +
                           " with no gaps",
                       line);
    }
    std::sort(set.questions.begin(), set.questions.end(),
              [](const SubQuestion& a, const SubQuestion& b) {
                return a.index < b.index;
              });
    for (const SubQuestion& q : set.questions) {
      std::string t = q.text;
      t.erase(0, t.find_first_not_of(" \t\r\n"));
      if (t.empty()) {
        throw ParseError("'" + path + "': question " +
                             std::to_string(q.index) + " is empty",
                         line);
      }
    }
    sets.push_back(std::move(set));
  });
  return sets;
}

void write_questions(const std::vector<SubQuestionSet>& sets,
                     const std::string& path) {
  std::ofstream out = open_for_write(path);
  for (const SubQuestionSet& set : sets) {
    ordered_json questions = ordered_json::array();
    for (const SubQuestion& q : set.questions) {
      questions.push_back({{"index", q.index}, {"text", q.text}});
    }
    ordered_json record = {{"request_id", set.request_id},
                           {"origin", origin_name(set.origin)},
                           {"questions", questions}};
    out << record.dump() << '\n';
  }
}

// ---------------------------------------------------------------------------
// Ratings JSONL: {request_id, doc_ids, ratings}

std::vector<RatingMatrix> read_ratings(const std::string& path) {
  std::vector<RatingMatrix> matrices;
  std::unordered_set<std::string> seen;
  for_each_record(path, [&](const json& record, int line) {
    require_keys(record, {"request_id", "doc_ids", "ratings"}, path, line);
    std::string rid = get_string(record, "request_id", path, line);
    if (!seen.insert(rid).second) {
      throw ParseError("'" + path + "': duplicate request_id '" + rid + "'",
                       line);
    }
    const json& doc_ids = record.at("doc_ids");
    const json& ratings = record.at("ratings");
    if (!doc_ids.is_array() || !ratings.is_array()) {
      throw ParseError("'" + path +
                           "': 'doc_ids' and 'ratings' must be arrays",
                       line);
    }
    if (doc_ids.size() != ratings.size()) {
      throw ParseError("'" + path + "': " + std::to_string(doc_ids.size()) +
                           " doc_ids but " + std::to_string(ratings.size()) +
                           " rating rows",
                       line);
    }
    std::vector<std::string> ids;
    for (const json& d : doc_ids) {
      if (!d.is_string()) {
        throw ParseError("'" + path + "': doc_id is not a string", line);
      }
      ids.push_back(d.get<std::string>());
    }
    int question_count = -1;
    std::vector<int> cells;
    for (const json& row : ratings) {
      if (!row.is_array()) {
        throw ParseError("'" + path + "': rating row is not an array", line);
      }
      if (question_count < 0) {
        question_count = static_cast<int>(row.size());
      } else if (static_cast<int>(row.size()) != question_count) {
        throw ParseError("'" + path + "': rating row length " +
                             std::to_string(row.size()) +
                             " does not match question count " +
                             std::to_string(question_count),
                         line);
      }
      for (const json& v : row) cells.push_back(get_rating(v, path, line));
    }
    if (question_count < 0) question_count = 0;
    try {
      matrices.push_back(make_rating_matrix(std::move(rid), std::move(ids),
                                            question_count, std::move(cells)));
    } catch (const InputError& e) {
      throw ParseError("'" + path + "': " + e.what(), line);
    }
  });
  return matrices;
}

void write_ratings(const std::vector<RatingMatrix>& matrices,
                   const std::string& path) {
  std::ofstream out = open_for_write(path);
  for (const RatingMatrix& m : matrices) {
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < m.doc_count(); ++i) {
      ordered_json row = ordered_json::array();
      for (int j = 0; j < m.question_count; ++j) row.push_back(m.rating(i, j));
      rows.push_back(std::move(row));
    }
    ordered_json record = {{"request_id", m.request_id},
                           {"doc_ids", m.doc_ids},
                           {"ratings", rows}};
    out << record.dump() << '\n';
  }
}

// ---------------------------------------------------------------------------
// Nugget judgments JSONL: {request_id, nugget_id, doc_id, rating},
// one line per (request, nugget, doc) triple.

std::vector<NuggetJudgments> read_nuggets(const std::string& path) {
  std::vector<std::string> request_order;
  std::map<std::string, std::vector<std::string>> nugget_order;
  std::map<std::string, std::map<std::string, std::map<std::string, int>>>
      table;

  for_each_record(path, [&](const json& record, int line) {
    require_keys(record, {"request_id", "nugget_id", "doc_id", "rating"}, path,
                 line);
    std::string rid = get_string(record, "request_id", path, line);
    std::string nid = get_string(record, "nugget_id", path, line);
    std::string did = get_string(record, "doc_id", path, line);
    int rating = get_rating(record.at("rating"), path, line);
    if (!table.count(rid)) request_order.push_back(rid);
    auto& nuggets = table[rid];
    if (!nuggets.count(nid)) nugget_order[rid].push_back(nid);
    auto [it, inserted] = nuggets[nid].emplace(did, rating);
    if (!inserted) {
      throw ParseError("'" + path + "': duplicate judgment for request '" +
                           rid + "', nugget '" + nid + "', doc '" + did + "'",
                       line);
    }
  });

  std::vector<NuggetJudgments> out;
  out.reserve(request_order.size());
  for (const std::string& rid : request_order) {
    NuggetJudgments j;
    j.request_id = rid;
    for (const std::string& nid : nugget_order[rid]) {
      j.nuggets.push_back({nid, std::move(table[rid][nid])});
    }
    out.push_back(std::move(j));
  }
  return out;
}

void write_nuggets(const std::vector<NuggetJudgments>& judgments,
                   const std::string& path) {
  std::ofstream out = open_for_write(path);
  for (const NuggetJudgments& j : judgments) {
    for (const auto& n : j.nuggets) {
      for (const auto& [doc, rating] : n.per_doc) {
        ordered_json record = {{"request_id", j.request_id},
                               {"nugget_id", n.nugget_id},
                               {"doc_id", doc},
                               {"rating", rating}};
        out << record.dump() << '\n';
      }
    }
  }
}

}  // namespace lancer
