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

#include "lancer/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include <json.hpp>

#include "lancer/errors.hpp"

namespace lancer {

namespace {

int nugget_rating(const NuggetJudgments::Nugget& n, const std::string& doc) {
  auto it = n.per_doc.find(doc);
  return it == n.per_doc.end() ? 0 : it->second;
}

std::vector<std::string> top_k_docs(const RankedList& run, int k) {
  std::vector<std::string> docs;
  docs.reserve(std::min<size_t>(run.entries.size(), k));
  for (const RankedEntry& e : run.entries) {
    if (static_cast<int>(docs.size()) >= k) break;
    docs.push_back(e.doc_id);
  }
  return docs;
}

void require_nonempty(const RankedList& run) {
  if (run.entries.empty()) {
    throw InputError("empty run for request '" + run.request_id + "'");
  }
}

/// Documents with at least one judgment, in deterministic (sorted) order.
std::vector<std::string> judged_docs(const NuggetJudgments& j) {
  std::set<std::string> docs;
  for (const auto& n : j.nuggets) {
    for (const auto& [doc, rating] : n.per_doc) docs.insert(doc);
  }
  return {docs.begin(), docs.end()};
}

double discount(int position) {  // 1-based rank
  return 1.0 / std::log2(static_cast<double>(position) + 1.0);
}

/// Decayed cover gain of `doc` given how often each nugget was already
/// covered, then bumps the counts.
double alpha_gain_and_count(const NuggetJudgments& j, const std::string& doc,
                            int tau, double alpha,
                            std::vector<int>& cover_count) {
  double gain = 0.0;
  for (size_t n = 0; n < j.nuggets.size(); ++n) {
    if (nugget_rating(j.nuggets[n], doc) >= tau) {
      gain += std::pow(1.0 - alpha, cover_count[n]);
      ++cover_count[n];
    }
  }
  return gain;
}

double alpha_gain_only(const NuggetJudgments& j, const std::string& doc,
                       int tau, double alpha,
                       const std::vector<int>& cover_count) {
  double gain = 0.0;
  for (size_t n = 0; n < j.nuggets.size(); ++n) {
    if (nugget_rating(j.nuggets[n], doc) >= tau) {
      gain += std::pow(1.0 - alpha, cover_count[n]);
    }
  }
  return gain;
}

int grade(const NuggetJudgments& j, const std::string& doc) {
  int g = 0;
  for (const auto& n : j.nuggets) g = std::max(g, nugget_rating(n, doc));
  return g;
}

double grade_gain(int g, NdcgGain mapping) {
  return mapping == NdcgGain::linear
             ? static_cast<double>(g)
             : std::pow(2.0, static_cast<double>(g)) - 1.0;
}

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

}  // namespace

NdcgGain ndcg_gain_from_name(const std::string& name) {
  if (name == "linear") return NdcgGain::linear;
  if (name == "exponential") return NdcgGain::exponential;
  throw ConfigError("unknown ndcg gain '" + name +
                    "' (expected linear or exponential)");
}

void validate_metric_config(const MetricConfig& cfg) {
  if (cfg.cutoff < 1) throw ConfigError("cutoff must be >= 1");
  if (cfg.tau < kMinRating || cfg.tau > kMaxRating) {
    throw ConfigError("metric tau must be in [0,5]");
  }
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) {
    throw ConfigError("metric alpha must be strictly between 0 and 1");
  }
}

double cov_at_k(const RankedList& run, const NuggetJudgments& j,
                const MetricConfig& cfg) {
  validate_metric_config(cfg);
  require_nonempty(run);
  if (j.nuggets.empty()) {
    throw UndefinedMetricError("request '" + run.request_id +
                               "' has zero nuggets; Cov is undefined");
  }
  std::vector<std::string> docs = top_k_docs(run, cfg.cutoff);
  int covered = 0;
  for (const auto& n : j.nuggets) {
    for (const std::string& d : docs) {
      if (nugget_rating(n, d) >= cfg.tau) {
        ++covered;
        break;
      }
    }
  }
  return static_cast<double>(covered) / static_cast<double>(j.nuggets.size());
}

std::vector<std::string> alpha_ideal_ordering(const NuggetJudgments& j,
                                              const MetricConfig& cfg, int k) {
  std::vector<std::string> pool = judged_docs(j);
  std::vector<int> cover_count(j.nuggets.size(), 0);
  std::vector<std::string> ideal;
  while (static_cast<int>(ideal.size()) < k && !pool.empty()) {
    size_t best = 0;
    double best_gain = -1.0;
    for (size_t i = 0; i < pool.size(); ++i) {
      double gain = alpha_gain_only(j, pool[i], cfg.tau, cfg.alpha,
                                    cover_count);
      if (gain > best_gain) {  // pool is sorted, so ties keep lowest doc_id
        best = i;
        best_gain = gain;
      }
    }
    if (best_gain <= 0.0) break;
    alpha_gain_and_count(j, pool[best], cfg.tau, cfg.alpha, cover_count);
    ideal.push_back(pool[best]);
    pool.erase(pool.begin() + best);
  }
  return ideal;
}

double alpha_ndcg_at_k(const RankedList& run, const NuggetJudgments& j,
                       const MetricConfig& cfg) {
  validate_metric_config(cfg);
  require_nonempty(run);

  std::vector<std::string> docs = top_k_docs(run, cfg.cutoff);
  std::vector<int> cover_count(j.nuggets.size(), 0);
  double dcg = 0.0;
  for (size_t i = 0; i < docs.size(); ++i) {
    double gain =
        alpha_gain_and_count(j, docs[i], cfg.tau, cfg.alpha, cover_count);
    dcg += gain * discount(static_cast<int>(i) + 1);
  }

  std::vector<std::string> ideal = alpha_ideal_ordering(j, cfg, cfg.cutoff);
  std::fill(cover_count.begin(), cover_count.end(), 0);
  double idcg = 0.0;
  for (size_t i = 0; i < ideal.size(); ++i) {
    double gain =
        alpha_gain_and_count(j, ideal[i], cfg.tau, cfg.alpha, cover_count);
    idcg += gain * discount(static_cast<int>(i) + 1);
  }
  if (idcg <= 0.0) {
    throw UndefinedMetricError("request '" + run.request_id +
                               "' has zero ideal gain; alpha-nDCG is "
                               "undefined");
  }
  return clamp01(dcg / idcg);
}

double ndcg_at_k(const RankedList& run, const NuggetJudgments& j,
                 const MetricConfig& cfg) {
  validate_metric_config(cfg);
  require_nonempty(run);

  std::vector<int> grades;
  for (const std::string& d : judged_docs(j)) grades.push_back(grade(j, d));
  std::sort(grades.begin(), grades.end(), std::greater<int>());

  double idcg = 0.0;
  for (size_t i = 0; i < grades.size() && static_cast<int>(i) < cfg.cutoff;
       ++i) {
    idcg += grade_gain(grades[i], cfg.ndcg_gain) *
            discount(static_cast<int>(i) + 1);
  }
  if (idcg <= 0.0) {
    throw UndefinedMetricError("request '" + run.request_id +
                               "' has all-zero grades; nDCG is undefined");
  }

  std::vector<std::string> docs = top_k_docs(run, cfg.cutoff);
  double dcg = 0.0;
  for (size_t i = 0; i < docs.size(); ++i) {
    dcg += grade_gain(grade(j, docs[i]), cfg.ndcg_gain) *
           discount(static_cast<int>(i) + 1);
  }
  return clamp01(dcg / idcg);
}

double precision_at_k(const RankedList& run, const NuggetJudgments& j,
                      const MetricConfig& cfg) {
  validate_metric_config(cfg);
  require_nonempty(run);
  std::vector<std::string> docs = top_k_docs(run, cfg.cutoff);
  int relevant = 0;
  for (const std::string& d : docs) {
    if (grade(j, d) >= cfg.tau) ++relevant;
  }
  return static_cast<double>(relevant) / static_cast<double>(cfg.cutoff);
}

MetricReport evaluate(const std::vector<RankedList>& runs,
                      const std::vector<NuggetJudgments>& judgments,
                      const MetricConfig& cfg) {
  validate_metric_config(cfg);
  if (runs.empty()) throw InputError("no runs to evaluate");

  std::map<std::string, const NuggetJudgments*> by_request;
  for (const NuggetJudgments& j : judgments) {
    by_request[j.request_id] = &j;
  }

  MetricReport report;
  for (const RankedList& run : runs) {
    if (report.per_request.count(run.request_id)) {
      throw InputError("duplicate run for request '" + run.request_id + "'");
    }
    auto it = by_request.find(run.request_id);
    if (it == by_request.end()) {
      throw InputError("no nugget judgments for request '" + run.request_id +
                       "'");
    }
    const NuggetJudgments& j = *it->second;
    RequestMetrics rm;
    auto compute = [&](const char* name, auto fn,
                       std::optional<double>& slot) {
      try {
        slot = fn(run, j, cfg);
      } catch (const UndefinedMetricError&) {
        report.undefined[name].push_back(run.request_id);
      }
    };
    compute("alpha_ndcg", alpha_ndcg_at_k, rm.alpha_ndcg);
    compute("cov", cov_at_k, rm.cov);
    compute("ndcg", ndcg_at_k, rm.ndcg);
    compute("precision", precision_at_k, rm.precision);
    report.per_request[run.request_id] = rm;
  }

  // per_request is ordered by request_id, which fixes the summation order.
  auto mean_of = [&](std::optional<double> RequestMetrics::*field)
      -> std::optional<double> {
    double total = 0.0;
    int count = 0;
    for (const auto& [rid, rm] : report.per_request) {
      if (rm.*field) {
        total += *(rm.*field);
        ++count;
      }
    }
    if (count == 0) return std::nullopt;
    return total / count;
  };
  report.means.alpha_ndcg = mean_of(&RequestMetrics::alpha_ndcg);
  report.means.cov = mean_of(&RequestMetrics::cov);
  report.means.ndcg = mean_of(&RequestMetrics::ndcg);
  report.means.precision = mean_of(&RequestMetrics::precision);
  return report;
}

namespace {

nlohmann::ordered_json metrics_json(const RequestMetrics& rm) {
  nlohmann::ordered_json obj;
  auto put = [&](const char* key, const std::optional<double>& v) {
    if (v) {
      obj[key] = *v;
    } else {
      obj[key] = nullptr;
    }
  };
  put("alpha_ndcg", rm.alpha_ndcg);
  put("cov", rm.cov);
  put("ndcg", rm.ndcg);
  put("precision", rm.precision);
  return obj;
}

std::string cell(const std::optional<double>& v) {
  if (!v) return "-";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", *v);
  return buf;
}

}  // namespace

std::string report_to_json(const MetricReport& report) {
  nlohmann::ordered_json doc;
  doc["per_request"] = nlohmann::ordered_json::object();
  for (const auto& [rid, rm] : report.per_request) {
    doc["per_request"][rid] = metrics_json(rm);
  }
  doc["means"] = metrics_json(report.means);
  doc["undefined"] = nlohmann::ordered_json::object();
  for (const auto& [metric, rids] : report.undefined) {
    doc["undefined"][metric] = rids;
  }
  return doc.dump(2);
}

std::string report_table(const MetricReport& report) {
  size_t width = 7;  // "request"
  for (const auto& [rid, rm] : report.per_request) {
    width = std::max(width, rid.size());
  }
  std::string out;
  char line[256];
  std::snprintf(line, sizeof(line), "%-*s %10s %10s %10s %10s\n",
                static_cast<int>(width), "request", "alpha_ndcg", "cov",
                "ndcg", "precision");
  out += line;
  for (const auto& [rid, rm] : report.per_request) {
    std::snprintf(line, sizeof(line), "%-*s %10s %10s %10s %10s\n",
                  static_cast<int>(width), rid.c_str(),
                  cell(rm.alpha_ndcg).c_str(), cell(rm.cov).c_str(),
                  cell(rm.ndcg).c_str(), cell(rm.precision).c_str());
    out += line;
  }
  std::snprintf(line, sizeof(line), "%-*s %10s %10s %10s %10s\n",
                static_cast<int>(width), "mean",
                cell(report.means.alpha_ndcg).c_str(),
                cell(report.means.cov).c_str(), cell(report.means.ndcg).c_str(),
                cell(report.means.precision).c_str());
  out += line;
  return out;
}

}  // namespace lancer
