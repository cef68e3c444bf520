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

// Pipeline driver: genq -> judge -> rerank -> eval, plus parameter sweeps.
// Exit codes: 0 success, 1 fatal input/config error, 2 partial degradation.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lancer/core.hpp"
#include "lancer/errors.hpp"
#include "lancer/gateway.hpp"
#include "lancer/io.hpp"
#include "lancer/judge.hpp"
#include "lancer/log.hpp"
#include "lancer/metrics.hpp"
#include "lancer/question_gen.hpp"
#include "lancer/rerank.hpp"

namespace {

using namespace lancer;

struct Settings {
  // Paths.
  std::string topics;
  std::string corpus;
  std::string run;
  std::string questions;
  std::string ratings;
  std::string nuggets;
  std::string out;
  std::string report;
  std::string config;
  std::string mock_script;
  // Gateway.
  std::string endpoint;
  std::string model;
  int max_in_flight = 8;
  int max_retries = 3;
  // Question generation.
  int n = 2;
  // Judging.
  int depth = 100;
  int doc_char_limit = 0;
  bool prepend_request = true;
  // Strategy.
  std::string strategy = "sum";
  int tau = 3;
  double alpha = 0.5;
  int kappa = 60;
  std::string run_tag;
  // Metrics.
  int cutoff = 10;
  int metric_tau = 3;
  double metric_alpha = 0.5;
  std::string ndcg_gain = "linear";
  // Sweep / fixtures.
  std::string sweep_grid;
  std::uint64_t seed = 0;
};

void apply_config_file(Settings& s, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file '" + path + "': " + e.what());
  }
  if (!doc.is_object()) {
    throw ConfigError("config file '" + path + "' is not a JSON object");
  }
  const std::map<std::string, std::function<void(const nlohmann::json&)>>
      setters = {
          {"topics", [&](const auto& v) { s.topics = v; }},
          {"corpus", [&](const auto& v) { s.corpus = v; }},
          {"run", [&](const auto& v) { s.run = v; }},
          {"questions", [&](const auto& v) { s.questions = v; }},
          {"ratings", [&](const auto& v) { s.ratings = v; }},
          {"nuggets", [&](const auto& v) { s.nuggets = v; }},
          {"out", [&](const auto& v) { s.out = v; }},
          {"report", [&](const auto& v) { s.report = v; }},
          {"mock_script", [&](const auto& v) { s.mock_script = v; }},
          {"endpoint", [&](const auto& v) { s.endpoint = v; }},
          {"model", [&](const auto& v) { s.model = v; }},
          {"max_in_flight", [&](const auto& v) { s.max_in_flight = v; }},
          {"max_retries", [&](const auto& v) { s.max_retries = v; }},
          {"n", [&](const auto& v) { s.n = v; }},
          {"depth", [&](const auto& v) { s.depth = v; }},
          {"doc_char_limit", [&](const auto& v) { s.doc_char_limit = v; }},
          {"prepend_request", [&](const auto& v) { s.prepend_request = v; }},
          {"strategy", [&](const auto& v) { s.strategy = v; }},
          {"tau", [&](const auto& v) { s.tau = v; }},
          {"alpha", [&](const auto& v) { s.alpha = v; }},
          {"kappa", [&](const auto& v) { s.kappa = v; }},
          {"run_tag", [&](const auto& v) { s.run_tag = v; }},
          {"cutoff", [&](const auto& v) { s.cutoff = v; }},
          {"metric_tau", [&](const auto& v) { s.metric_tau = v; }},
          {"metric_alpha", [&](const auto& v) { s.metric_alpha = v; }},
          {"ndcg_gain", [&](const auto& v) { s.ndcg_gain = v; }},
          {"sweep_grid", [&](const auto& v) { s.sweep_grid = v; }},
          {"seed", [&](const auto& v) { s.seed = v; }},
      };
  for (const auto& [key, value] : doc.items()) {
    auto it = setters.find(key);
    if (it == setters.end()) {
      throw ConfigError("config file '" + path + "': unknown key '" + key +
                        "'");
    }
    try {
      it->second(value);
    } catch (const nlohmann::json::exception&) {
      throw ConfigError("config file '" + path + "': bad value for '" + key +
                        "'");
    }
  }
}

void echo_effective_config(const std::string& command, const Settings& s) {
  std::string msg = "command=" + command;
  auto add = [&](const char* key, const std::string& value) {
    if (!value.empty()) msg += " " + std::string(key) + "=" + value;
  };
  add("topics", s.topics);
  add("corpus", s.corpus);
  add("run", s.run);
  add("questions", s.questions);
  add("ratings", s.ratings);
  add("nuggets", s.nuggets);
  add("out", s.out);
  add("report", s.report);
  add("mock_script", s.mock_script);
  add("endpoint", s.endpoint);
  add("model", s.model);
  msg += " strategy=" + s.strategy + " tau=" + std::to_string(s.tau) +
         " alpha=" + std::to_string(s.alpha) +
         " kappa=" + std::to_string(s.kappa) + " n=" + std::to_string(s.n) +
         " depth=" + std::to_string(s.depth) +
         " cutoff=" + std::to_string(s.cutoff) +
         " metric_tau=" + std::to_string(s.metric_tau) +
         " max_in_flight=" + std::to_string(s.max_in_flight);
  log::info(msg);
}

Gateway make_gateway(const Settings& s) {
  GatewayConfig cfg;
  cfg.endpoint_url = s.endpoint;
  cfg.model_name = s.model;
  cfg.max_in_flight = s.max_in_flight;
  cfg.max_retries = s.max_retries;
  apply_env_overrides(cfg);

  if (!s.mock_script.empty()) {
    auto mock = load_mock_script(s.mock_script);
    if (s.seed != 0) mock->shuffle_script(s.seed);
    return Gateway(cfg, std::move(mock));
  }
  if (cfg.endpoint_url.empty()) {
    throw ConfigError(
        "no gateway: pass --endpoint (or LANCER_ENDPOINT) or --mock-script");
  }
  return Gateway(cfg, std::make_shared<HttpBackend>(cfg));
}

StrategyConfig strategy_config(const Settings& s) {
  StrategyConfig cfg;
  cfg.strategy = strategy_from_name(s.strategy);
  cfg.tau = s.tau;
  cfg.alpha = s.alpha;
  cfg.kappa = s.kappa;
  cfg.output_depth = s.depth;
  validate_strategy_config(cfg);
  return cfg;
}

MetricConfig metric_config(const Settings& s) {
  MetricConfig cfg;
  cfg.cutoff = s.cutoff;
  cfg.tau = s.metric_tau;
  cfg.alpha = s.metric_alpha;
  cfg.ndcg_gain = ndcg_gain_from_name(s.ndcg_gain);
  validate_metric_config(cfg);
  return cfg;
}

void require_path(const std::string& value, const char* flag) {
  if (value.empty()) {
    throw ConfigError(std::string("missing required path: ") + flag);
  }
}

int cmd_genq(const Settings& s) {
  require_path(s.topics, "--topics");
  require_path(s.questions, "--questions (output)");
  std::vector<ReportRequest> topics = read_topics(s.topics);
  Gateway gateway = make_gateway(s);
  QuestionGenConfig cfg;
  cfg.n = s.n;

  std::vector<SubQuestionSet> sets;
  int failed = 0;
  for (const ReportRequest& topic : topics) {
    try {
      sets.push_back(generate_subquestions(topic, cfg, gateway));
    } catch (const Error& e) {
      log::warn(std::string("sub-question generation failed: ") + e.what());
      ++failed;
    }
  }
  if (sets.empty()) {
    log::error("sub-question generation failed for every topic");
    return 1;
  }
  write_questions(sets, s.questions);
  log::info("wrote " + std::to_string(sets.size()) + " question sets to " +
            s.questions + " (" + std::to_string(failed) + " failed)");
  return failed == 0 ? 0 : 2;
}

int cmd_judge(const Settings& s) {
  require_path(s.topics, "--topics");
  require_path(s.questions, "--questions");
  require_path(s.run, "--run");
  require_path(s.corpus, "--corpus");
  require_path(s.ratings, "--ratings (output)");

  std::map<std::string, ReportRequest> topics;
  for (ReportRequest& t : read_topics(s.topics)) {
    topics.emplace(t.request_id, std::move(t));
  }
  std::map<std::string, SubQuestionSet> questions;
  for (SubQuestionSet& q : read_questions(s.questions)) {
    questions.emplace(q.request_id, std::move(q));
  }
  std::map<std::string, std::string> corpus;
  for (CorpusDoc& d : read_corpus(s.corpus)) {
    corpus.emplace(d.doc_id, std::move(d.text));
  }
  std::vector<RankedList> runs = read_run(s.run);

  Gateway gateway = make_gateway(s);
  JudgeConfig cfg;
  cfg.prepend_request = s.prepend_request;
  cfg.doc_char_limit = s.doc_char_limit;

  std::vector<RatingMatrix> matrices;
  size_t degraded = 0;
  size_t skipped = 0;
  for (const RankedList& run : runs) {
    auto topic = topics.find(run.request_id);
    if (topic == topics.end()) {
      throw InputError("request '" + run.request_id +
                       "' from the run file has no topic record");
    }
    auto qs = questions.find(run.request_id);
    if (qs == questions.end()) {
      // Question generation may have failed for this topic; judge what
      // remains instead of killing the batch.
      log::warn("request '" + run.request_id +
                "' has no question record; skipped");
      ++skipped;
      continue;
    }
    std::vector<Candidate> cands;
    for (const RankedEntry& e : run.entries) {
      if (static_cast<int>(cands.size()) >= s.depth) break;
      auto text = corpus.find(e.doc_id);
      if (text == corpus.end()) {
        throw InputError("doc '" + e.doc_id + "' (request '" +
                         run.request_id + "') is missing from the corpus");
      }
      cands.push_back(Candidate{e.doc_id, text->second, e.score, e.rank});
    }
    JudgeResult result =
        judge_all(topic->second, qs->second, cands, cfg, gateway);
    degraded += result.warnings.size();
    matrices.push_back(std::move(result.matrix));
  }
  if (matrices.empty()) {
    log::error("no request could be judged");
    return 1;
  }
  write_ratings(matrices, s.ratings);
  log::info("wrote " + std::to_string(matrices.size()) +
            " rating matrices to " + s.ratings + " (" +
            std::to_string(degraded) + " degraded cells, " +
            std::to_string(skipped) + " requests skipped)");
  return degraded == 0 && skipped == 0 ? 0 : 2;
}

int cmd_rerank(const Settings& s) {
  require_path(s.ratings, "--ratings");
  require_path(s.run, "--run");
  require_path(s.out, "--out");

  std::vector<RatingMatrix> matrices = read_ratings(s.ratings);
  std::map<std::string, RankedList> first_stage;
  for (RankedList& list : read_run(s.run)) {
    first_stage.emplace(list.request_id, std::move(list));
  }
  StrategyConfig cfg = strategy_config(s);

  std::vector<RankedList> reranked;
  std::set<std::string> covered;
  for (const RatingMatrix& m : matrices) {
    auto fs = first_stage.find(m.request_id);
    if (fs == first_stage.end()) {
      throw InputError("request '" + m.request_id +
                       "' has ratings but no first-stage run");
    }
    covered.insert(m.request_id);
    reranked.push_back(rerank(m, cfg, fs->second));
  }
  for (const auto& [rid, list] : first_stage) {
    if (!covered.count(rid)) {
      log::warn("request '" + rid + "' has no ratings; left out of " + s.out);
    }
  }
  std::string tag =
      s.run_tag.empty() ? "lancer-" + strategy_name(cfg.strategy) : s.run_tag;
  write_run(reranked, tag, s.out);
  log::info("wrote " + std::to_string(reranked.size()) + " reranked lists (" +
            tag + ") to " + s.out);
  return 0;
}

int cmd_eval(const Settings& s) {
  require_path(s.run, "--run");
  require_path(s.nuggets, "--nuggets");

  std::vector<RankedList> runs = read_run(s.run);
  std::vector<NuggetJudgments> judgments = read_nuggets(s.nuggets);
  MetricReport report = evaluate(runs, judgments, metric_config(s));

  std::fputs(report_table(report).c_str(), stdout);
  if (!s.out.empty()) {
    std::ofstream out(s.out);
    if (!out) throw InputError("cannot open '" + s.out + "' for writing");
    out << report_to_json(report) << '\n';
    log::info("wrote metric report to " + s.out);
  }
  return 0;
}

int cmd_pipeline(Settings s) {
  require_path(s.topics, "--topics");
  require_path(s.corpus, "--corpus");
  require_path(s.run, "--run");
  require_path(s.out, "--out");
  if (s.questions.empty()) s.questions = s.out + ".questions.jsonl";
  if (s.ratings.empty()) s.ratings = s.out + ".ratings.jsonl";
  if (s.report.empty()) s.report = s.out + ".report.json";

  int code = 0;
  if (std::filesystem::exists(s.questions)) {
    log::info("stage genq: reusing " + s.questions);
  } else {
    code = std::max(code, cmd_genq(s));
  }
  if (std::filesystem::exists(s.ratings)) {
    log::info("stage judge: reusing " + s.ratings);
  } else {
    code = std::max(code, cmd_judge(s));
  }
  code = std::max(code, cmd_rerank(s));
  if (!s.nuggets.empty()) {
    Settings eval = s;
    eval.run = s.out;
    eval.out = s.report;
    code = std::max(code, cmd_eval(eval));
  } else {
    log::info("no --nuggets given; skipping evaluation");
  }
  return code;
}

// ---------------------------------------------------------------------------
// Parameter sweep

struct SweepGrid {
  std::vector<Strategy> strategies;
  std::vector<int> taus;
  std::vector<double> alphas;
};

SweepGrid parse_sweep_grid(const std::string& spec) {
  // Format: "strategy=sum,rrf;tau=2..5;alpha=0.5" (tau also accepts a
  // comma list).
  SweepGrid grid;
  std::istringstream segments(spec);
  std::string segment;
  while (std::getline(segments, segment, ';')) {
    if (segment.empty()) continue;
    size_t eq = segment.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("sweep grid segment '" + segment + "' has no '='");
    }
    std::string key = segment.substr(0, eq);
    std::string values = segment.substr(eq + 1);
    std::istringstream items(values);
    std::string item;
    while (std::getline(items, item, ',')) {
      if (item.empty()) continue;
      try {
        if (key == "strategy") {
          grid.strategies.push_back(strategy_from_name(item));
        } else if (key == "tau") {
          size_t range = item.find("..");
          if (range != std::string::npos) {
            int lo = std::stoi(item.substr(0, range));
            int hi = std::stoi(item.substr(range + 2));
            for (int t = lo; t <= hi; ++t) grid.taus.push_back(t);
          } else {
            grid.taus.push_back(std::stoi(item));
          }
        } else if (key == "alpha") {
          grid.alphas.push_back(std::stod(item));
        } else {
          throw ConfigError("sweep grid has unknown key '" + key + "'");
        }
      } catch (const ConfigError&) {
        throw;
      } catch (const std::exception&) {
        throw ConfigError("sweep grid value '" + item + "' for '" + key +
                          "' is not numeric");
      }
    }
  }
  std::sort(grid.taus.begin(), grid.taus.end());
  grid.taus.erase(std::unique(grid.taus.begin(), grid.taus.end()),
                  grid.taus.end());
  std::sort(grid.alphas.begin(), grid.alphas.end());
  grid.alphas.erase(std::unique(grid.alphas.begin(), grid.alphas.end()),
                    grid.alphas.end());
  std::sort(grid.strategies.begin(), grid.strategies.end(),
            [](Strategy a, Strategy b) {
              return strategy_name(a) < strategy_name(b);
            });
  grid.strategies.erase(
      std::unique(grid.strategies.begin(), grid.strategies.end()),
      grid.strategies.end());
  return grid;
}

std::string csv_number(const std::optional<double>& v) {
  if (!v) return "";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", *v);
  return buf;
}

int cmd_sweep(const Settings& s) {
  require_path(s.ratings, "--ratings");
  require_path(s.run, "--run");
  require_path(s.nuggets, "--nuggets");
  if (s.sweep_grid.empty()) {
    throw ConfigError("empty sweep grid: pass --sweep-grid");
  }
  SweepGrid grid = parse_sweep_grid(s.sweep_grid);
  if (grid.strategies.empty()) {
    throw ConfigError("sweep grid names no strategies");
  }
  if (grid.alphas.empty()) grid.alphas.push_back(s.alpha);

  std::vector<RatingMatrix> matrices = read_ratings(s.ratings);
  std::map<std::string, RankedList> first_stage;
  for (RankedList& list : read_run(s.run)) {
    first_stage.emplace(list.request_id, std::move(list));
  }
  std::vector<NuggetJudgments> judgments = read_nuggets(s.nuggets);
  MetricConfig mc = metric_config(s);

  // One row: rerank every request under the given configuration
  // (optionally on a rating-thresholded matrix) and average the metrics.
  auto evaluate_row = [&](const StrategyConfig& cfg, int pre_threshold_tau) {
    std::vector<RankedList> runs;
    for (const RatingMatrix& m : matrices) {
      auto fs = first_stage.find(m.request_id);
      if (fs == first_stage.end()) {
        throw InputError("request '" + m.request_id +
                         "' has ratings but no first-stage run");
      }
      if (pre_threshold_tau > 0) {
        runs.push_back(rerank(apply_rating_threshold(m, pre_threshold_tau),
                              cfg, fs->second));
      } else {
        runs.push_back(rerank(m, cfg, fs->second));
      }
    }
    return evaluate(runs, judgments, mc).means;
  };

  std::string csv = "strategy,tau,alpha,alpha_ndcg,cov,ndcg,precision\n";
  auto emit = [&](Strategy strategy, const std::string& tau_cell,
                  const std::string& alpha_cell, const RequestMetrics& means) {
    csv += strategy_name(strategy) + "," + tau_cell + "," + alpha_cell + "," +
           csv_number(means.alpha_ndcg) + "," + csv_number(means.cov) + "," +
           csv_number(means.ndcg) + "," + csv_number(means.precision) + "\n";
  };

  for (Strategy strategy : grid.strategies) {
    const bool uses_alpha = strategy == Strategy::greedy_alpha;
    const bool native_tau = strategy == Strategy::sum_tau ||
                            strategy == Strategy::greedy_alpha ||
                            strategy == Strategy::greedy_cov;
    std::vector<double> alphas =
        uses_alpha ? grid.alphas : std::vector<double>{s.alpha};

    // Unthresholded variant. sum_tau is inherently thresholded and has
    // none; cover-based utilities fall back to tau=1, where any positive
    // rating covers.
    if (strategy != Strategy::sum_tau) {
      for (double alpha : alphas) {
        StrategyConfig cfg;
        cfg.strategy = strategy;
        cfg.tau = native_tau ? 1 : s.tau;
        cfg.alpha = alpha;
        cfg.kappa = s.kappa;
        cfg.output_depth = s.depth;
        emit(strategy, "", uses_alpha ? csv_number(alpha) : "",
             evaluate_row(cfg, 0));
      }
    }
    for (int tau : grid.taus) {
      for (double alpha : alphas) {
        StrategyConfig cfg;
        cfg.strategy = strategy;
        cfg.alpha = alpha;
        cfg.kappa = s.kappa;
        cfg.output_depth = s.depth;
        cfg.tau = tau;
        int pre_threshold = 0;
        if (strategy == Strategy::sum) {
          cfg.strategy = Strategy::sum_tau;  // sum + tau is sum_tau
        } else if (strategy == Strategy::rrf ||
                   strategy == Strategy::greedy_sum) {
          pre_threshold = tau;  // no native threshold; zero low ratings
        }
        emit(strategy, csv_number(static_cast<double>(tau)),
             uses_alpha ? csv_number(alpha) : "",
             evaluate_row(cfg, pre_threshold));
      }
    }
  }

  if (s.out.empty()) {
    std::fputs(csv.c_str(), stdout);
  } else {
    std::ofstream out(s.out);
    if (!out) throw InputError("cannot open '" + s.out + "' for writing");
    out << csv;
    log::info("wrote sweep CSV to " + s.out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "LANCER: coverage-optimized LLM reranking for long-form retrieval"};
  app.require_subcommand(1);

  Settings s;
  // The config file seeds the defaults; explicit flags override it.
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    try {
      if (arg == "--config" && i + 1 < argc) {
        apply_config_file(s, argv[i + 1]);
      } else if (arg.rfind("--config=", 0) == 0) {
        apply_config_file(s, arg.substr(9));
      }
    } catch (const Error& e) {
      log::error(e.what());
      return 1;
    }
  }

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", s.config, "JSON config file with defaults");
    cmd->add_option("--mock-script", s.mock_script,
                    "mock gateway script (JSON) instead of a live endpoint");
    cmd->add_option("--endpoint", s.endpoint,
                    "OpenAI-compatible endpoint base URL");
    cmd->add_option("--model", s.model, "model name sent to the endpoint");
    cmd->add_option("--max-in-flight", s.max_in_flight,
                    "global bound on concurrent gateway calls");
    cmd->add_option("--seed", s.seed,
                    "shuffle seed for ordered mock scripts (fixtures only)");
  };

  CLI::App* genq =
      app.add_subcommand("genq", "generate sub-questions for every topic");
  genq->add_option("--topics", s.topics, "topics JSONL (input)");
  genq->add_option("--questions", s.questions, "questions JSONL (output)");
  genq->add_option("--n", s.n, "sub-questions per topic");
  add_common(genq);

  CLI::App* judge =
      app.add_subcommand("judge", "rate every (document, sub-question) pair");
  judge->add_option("--topics", s.topics, "topics JSONL (input)");
  judge->add_option("--questions", s.questions, "questions JSONL (input)");
  judge->add_option("--run", s.run, "first-stage TREC run (input)");
  judge->add_option("--corpus", s.corpus, "corpus JSONL (input)");
  judge->add_option("--ratings", s.ratings, "ratings JSONL (output)");
  judge->add_option("--depth", s.depth, "candidates judged per request");
  add_common(judge);

  CLI::App* rerank_cmd =
      app.add_subcommand("rerank", "aggregate ratings into a reranked run");
  rerank_cmd->add_option("--ratings", s.ratings, "ratings JSONL (input)");
  rerank_cmd->add_option("--run", s.run, "first-stage TREC run (input)");
  rerank_cmd->add_option("--out", s.out, "reranked TREC run (output)");
  rerank_cmd->add_option("--strategy", s.strategy,
                         "sum | sum_tau | rrf | greedy_sum | greedy_alpha | "
                         "greedy_cov");
  rerank_cmd->add_option("--tau", s.tau, "rating threshold");
  rerank_cmd->add_option("--alpha", s.alpha, "greedy_alpha penalty");
  rerank_cmd->add_option("--kappa", s.kappa, "RRF constant");
  rerank_cmd->add_option("--depth", s.depth, "output depth");
  rerank_cmd->add_option("--run-tag", s.run_tag,
                         "run tag (default lancer-<strategy>)");
  add_common(rerank_cmd);

  CLI::App* eval =
      app.add_subcommand("eval", "score a run against nugget judgments");
  eval->add_option("--run", s.run, "TREC run to evaluate (input)");
  eval->add_option("--nuggets", s.nuggets, "nugget judgments JSONL (input)");
  eval->add_option("--out", s.out, "metric report JSON (output, optional)");
  eval->add_option("--cutoff", s.cutoff, "rank cutoff k");
  eval->add_option("--tau", s.metric_tau, "metric-side cover threshold");
  eval->add_option("--alpha", s.metric_alpha, "metric-side alpha");
  eval->add_option("--ndcg-gain", s.ndcg_gain, "linear | exponential");
  add_common(eval);

  CLI::App* pipeline = app.add_subcommand(
      "pipeline",
      "genq -> judge -> rerank -> eval with persisted intermediates");
  pipeline->add_option("--topics", s.topics, "topics JSONL (input)");
  pipeline->add_option("--corpus", s.corpus, "corpus JSONL (input)");
  pipeline->add_option("--run", s.run, "first-stage TREC run (input)");
  pipeline->add_option("--questions", s.questions,
                       "questions JSONL (intermediate; reused if present)");
  pipeline->add_option("--ratings", s.ratings,
                       "ratings JSONL (intermediate; reused if present)");
  pipeline->add_option("--nuggets", s.nuggets,
                       "nugget judgments JSONL (optional input)");
  pipeline->add_option("--out", s.out, "reranked TREC run (output)");
  pipeline->add_option("--report", s.report,
                       "metric report JSON (default <out>.report.json)");
  pipeline->add_option("--n", s.n, "sub-questions per topic");
  pipeline->add_option("--depth", s.depth, "candidates judged per request");
  pipeline->add_option("--strategy", s.strategy, "aggregation strategy");
  pipeline->add_option("--tau", s.tau, "strategy rating threshold");
  pipeline->add_option("--alpha", s.alpha, "greedy_alpha penalty");
  pipeline->add_option("--kappa", s.kappa, "RRF constant");
  pipeline->add_option("--cutoff", s.cutoff, "metric rank cutoff");
  add_common(pipeline);

  CLI::App* sweep = app.add_subcommand(
      "sweep",
      "evaluate a (strategy, tau, alpha) grid from one ratings file");
  sweep->add_option("--ratings", s.ratings, "ratings JSONL (input)");
  sweep->add_option("--run", s.run, "first-stage TREC run (input)");
  sweep->add_option("--nuggets", s.nuggets, "nugget judgments JSONL (input)");
  sweep->add_option("--out", s.out, "CSV output (default stdout)");
  sweep->add_option("--sweep-grid", s.sweep_grid,
                    "e.g. strategy=sum,rrf,greedy_cov;tau=2..5;alpha=0.5");
  sweep->add_option("--cutoff", s.cutoff, "metric rank cutoff");
  sweep->add_option("--depth", s.depth, "output depth");
  add_common(sweep);

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(genq)) {
      echo_effective_config("genq", s);
      return cmd_genq(s);
    }
    if (app.got_subcommand(judge)) {
      echo_effective_config("judge", s);
      return cmd_judge(s);
    }
    if (app.got_subcommand(rerank_cmd)) {
      echo_effective_config("rerank", s);
      return cmd_rerank(s);
    }
    if (app.got_subcommand(eval)) {
      echo_effective_config("eval", s);
      return cmd_eval(s);
    }
    if (app.got_subcommand(pipeline)) {
      echo_effective_config("pipeline", s);
      return cmd_pipeline(s);
    }
    if (app.got_subcommand(sweep)) {
      echo_effective_config("sweep", s);
      return cmd_sweep(s);
    }
  } catch (const Error& e) {
    log::error(e.what());
    return 1;
  } catch (const std::exception& e) {
    log::error(std::string("unexpected: ") + e.what());
    return 1;
  }
  return 1;
}
