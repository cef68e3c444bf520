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
#include <optional>
#include <string>
#include <vector>

#include "lancer/core.hpp"

namespace lancer {

enum class NdcgGain { linear, exponential };

NdcgGain ndcg_gain_from_name(const std::string& name);

struct MetricConfig {
  int cutoff = 10;   // rank cutoff k
  int tau = 3;       // nugget cover threshold (independent of strategy tau)
  double alpha = 0.5;
  NdcgGain ndcg_gain = NdcgGain::linear;
};

void validate_metric_config(const MetricConfig& cfg);

/// Fraction of nuggets answered at rating >= tau by at least one of the
/// top-cutoff documents. Unjudged (doc, nugget) pairs count as rating 0.
/// Throws UndefinedMetricError when the request has zero nuggets.
double cov_at_k(const RankedList& run, const NuggetJudgments& j,
                const MetricConfig& cfg);

/// Diversity-aware nDCG: position gains decay a nugget's repeated
/// coverage by (1-alpha) per prior covering document; the ideal is built
/// greedily over all judged documents. Throws UndefinedMetricError when
/// the ideal gain is zero.
double alpha_ndcg_at_k(const RankedList& run, const NuggetJudgments& j,
                       const MetricConfig& cfg);

/// Relevance nDCG over document grades g(d) = max nugget rating, with the
/// configured gain mapping. Throws UndefinedMetricError when every judged
/// grade is zero.
double ndcg_at_k(const RankedList& run, const NuggetJudgments& j,
                 const MetricConfig& cfg);

/// |top-k documents with grade >= tau| / k. Always defined.
double precision_at_k(const RankedList& run, const NuggetJudgments& j,
                      const MetricConfig& cfg);

/// Greedy ideal document ordering for alpha-nDCG over all judged
/// documents (ties by doc_id); at most k entries, stops at zero gain.
std::vector<std::string> alpha_ideal_ordering(const NuggetJudgments& j,
                                              const MetricConfig& cfg, int k);

struct RequestMetrics {
  std::optional<double> alpha_ndcg;
  std::optional<double> cov;
  std::optional<double> ndcg;
  std::optional<double> precision;
};

struct MetricReport {
  std::map<std::string, RequestMetrics> per_request;
  RequestMetrics means;  // unweighted over requests where defined
  // metric name -> request_ids for which the metric is undefined
  std::map<std::string, std::vector<std::string>> undefined;
};

/// Evaluates every run against its request's judgments. A run whose
/// request has no judgments is an input error; undefined metrics are
/// excluded from that metric's mean and reported.
MetricReport evaluate(const std::vector<RankedList>& runs,
                      const std::vector<NuggetJudgments>& judgments,
                      const MetricConfig& cfg);

std::string report_to_json(const MetricReport& report);
std::string report_table(const MetricReport& report);

}  // namespace lancer
