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

#include "lancer/gateway.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <random>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "lancer/log.hpp"

namespace lancer {

void apply_env_overrides(GatewayConfig& cfg) {
  if (const char* ep = std::getenv("LANCER_ENDPOINT")) cfg.endpoint_url = ep;
  if (const char* key = std::getenv("LANCER_API_KEY")) cfg.api_key = key;
}

// ---------------------------------------------------------------------------
// MockBackend

std::string MockBackend::complete(const ChatRequest& req, std::uint64_t seq) {
  if (ordered_mode_) {
    if (seq < script_.size()) return script_[seq];
    return default_text_;
  }
  auto it = exact_.find(req.user_prompt);
  if (it != exact_.end()) return it->second;
  for (const Rule& rule : rules_) {
    bool all = std::all_of(
        rule.needles.begin(), rule.needles.end(), [&](const std::string& n) {
          return req.user_prompt.find(n) != std::string::npos;
        });
    if (all) {
      if (rule.is_failure) throw GatewayError(rule.text, 0, 1, false);
      return rule.text;
    }
  }
  return default_text_;
}

void MockBackend::script_exact(std::string user_prompt, std::string text) {
  exact_[std::move(user_prompt)] = std::move(text);
}

void MockBackend::script_rule(std::vector<std::string> needles,
                              std::string text) {
  rules_.push_back({std::move(needles), std::move(text), false});
}

void MockBackend::script_failure(std::vector<std::string> needles,
                                 std::string message) {
  rules_.push_back({std::move(needles), std::move(message), true});
}

void MockBackend::script_ordered(std::vector<std::string> script) {
  script_ = std::move(script);
  ordered_mode_ = true;
}

void MockBackend::set_default_text(std::string text) {
  default_text_ = std::move(text);
}

void MockBackend::shuffle_script(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::shuffle(script_.begin(), script_.end(), rng);
}

std::shared_ptr<MockBackend> load_mock_script(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open mock script '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("mock script '" + path + "': " + e.what());
  }
  auto backend = std::make_shared<MockBackend>();
  if (doc.contains("default")) {
    backend->set_default_text(doc.at("default").get<std::string>());
  }
  if (doc.contains("exact")) {
    for (auto& [prompt, text] : doc.at("exact").items()) {
      backend->script_exact(prompt, text.get<std::string>());
    }
  }
  if (doc.contains("rules")) {
    for (const auto& rule : doc.at("rules")) {
      std::vector<std::string> needles;
      const auto& c = rule.at("contains");
      if (c.is_string()) {
        needles.push_back(c.get<std::string>());
      } else {
        for (const auto& n : c) needles.push_back(n.get<std::string>());
      }
      if (rule.contains("error")) {
        backend->script_failure(std::move(needles),
                                rule.at("error").get<std::string>());
      } else {
        backend->script_rule(std::move(needles),
                             rule.at("text").get<std::string>());
      }
    }
  }
  if (doc.contains("script")) {
    backend->script_ordered(
        doc.at("script").get<std::vector<std::string>>());
  }
  return backend;
}

// ---------------------------------------------------------------------------
// HttpBackend

HttpBackend::HttpBackend(GatewayConfig cfg) : cfg_(std::move(cfg)) {
  const std::string& url = cfg_.endpoint_url;
  size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw ConfigError("endpoint url '" + url + "' has no scheme");
  }
  size_t path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) {
    base_url_ = url;
  } else {
    base_url_ = url.substr(0, path_start);
    path_prefix_ = url.substr(path_start);
    while (!path_prefix_.empty() && path_prefix_.back() == '/') {
      path_prefix_.pop_back();
    }
  }
  id_ = cfg_.model_name.empty() ? base_url_ : cfg_.model_name;
}

std::string HttpBackend::complete(const ChatRequest& req, std::uint64_t) {
  nlohmann::json messages = nlohmann::json::array();
  if (req.system_prompt) {
    messages.push_back({{"role", "system"}, {"content", *req.system_prompt}});
  }
  messages.push_back({{"role", "user"}, {"content", req.user_prompt}});
  nlohmann::json body = {{"model", cfg_.model_name},
                         {"messages", messages},
                         {"temperature", req.temperature},
                         {"max_tokens", req.max_tokens}};

  httplib::Client client(base_url_);
  auto timeout = std::chrono::duration_cast<std::chrono::milliseconds>(
      cfg_.request_timeout);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);
  httplib::Headers headers;
  if (!cfg_.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + cfg_.api_key);
  }

  auto result = client.Post(path_prefix_ + "/chat/completions", headers,
                            body.dump(), "application/json");
  if (!result) {
    throw GatewayError("transport failure contacting " + base_url_ + ": " +
                           httplib::to_string(result.error()),
                       0, 1, true);
  }
  if (result->status < 200 || result->status >= 300) {
    throw GatewayError("HTTP " + std::to_string(result->status) + " from " +
                           base_url_,
                       result->status, 1, true);
  }
  try {
    nlohmann::json doc = nlohmann::json::parse(result->body);
    return doc.at("choices").at(0).at("message").at("content")
        .get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw GatewayError("malformed completion body: " + std::string(e.what()),
                       result->status, 1, false);
  }
}

// ---------------------------------------------------------------------------
// Gateway

namespace {

class SlotGuard {
 public:
  explicit SlotGuard(std::counting_semaphore<>& sem) : sem_(sem) {
    sem_.acquire();
  }
  ~SlotGuard() { sem_.release(); }
  SlotGuard(const SlotGuard&) = delete;
  SlotGuard& operator=(const SlotGuard&) = delete;

 private:
  std::counting_semaphore<>& sem_;
};

std::chrono::milliseconds jittered_backoff(std::chrono::milliseconds base,
                                           int attempt) {
  // Full jitter: uniform in [0, base * 2^attempt].
  double cap = static_cast<double>(base.count()) *
               static_cast<double>(1ULL << std::min(attempt, 20));
  thread_local std::mt19937_64 rng(std::random_device{}());
  std::uniform_real_distribution<double> dist(0.0, cap);
  return std::chrono::milliseconds(static_cast<long>(dist(rng)));
}

}  // namespace

Gateway::Gateway(GatewayConfig cfg, std::shared_ptr<ChatBackend> backend)
    : cfg_(std::move(cfg)),
      backend_(std::move(backend)),
      slots_(std::max(1, cfg_.max_in_flight)) {
  if (cfg_.max_in_flight < 1) {
    throw ConfigError("max_in_flight must be >= 1");
  }
  if (!backend_) throw ConfigError("gateway requires a backend");
}

ChatResponse Gateway::complete(const ChatRequest& req) {
  return complete_with_seq(req, next_seq_.fetch_add(1));
}

ChatResponse Gateway::complete_with_seq(const ChatRequest& req,
                                        std::uint64_t seq) {
  SlotGuard slot(slots_);
  auto start = std::chrono::steady_clock::now();
  for (int attempt = 0;; ++attempt) {
    try {
      std::string text = backend_->complete(req, seq);
      auto latency = std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::steady_clock::now() - start);
      return ChatResponse{std::move(text), backend_->id(), latency};
    } catch (const GatewayError& e) {
      if (!e.retryable() || attempt >= cfg_.max_retries) {
        throw GatewayError(std::string(e.what()) + " (" +
                               std::to_string(attempt + 1) + " attempts)",
                           e.http_status(), attempt + 1, false);
      }
      std::this_thread::sleep_for(
          jittered_backoff(cfg_.retry_base_delay, attempt));
    }
  }
}

std::vector<BatchItem> Gateway::complete_batch(
    const std::vector<ChatRequest>& reqs) {
  std::vector<BatchItem> results(reqs.size());
  if (reqs.empty()) return results;

  // Sequence numbers are assigned by input position before any worker
  // starts, so ordered mock scripts see a stable call order.
  std::uint64_t seq_base = next_seq_.fetch_add(reqs.size());
  std::atomic<size_t> cursor{0};
  int worker_count = std::min<size_t>(cfg_.max_in_flight, reqs.size());

  auto work = [&]() {
    while (true) {
      size_t i = cursor.fetch_add(1);
      if (i >= reqs.size()) break;
      try {
        results[i].response = complete_with_seq(reqs[i], seq_base + i);
      } catch (const std::exception& e) {
        results[i].error = e.what();
      }
    }
  };

  std::vector<std::thread> workers;
  workers.reserve(worker_count);
  for (int w = 0; w < worker_count; ++w) workers.emplace_back(work);
  for (auto& t : workers) t.join();
  return results;
}

}  // namespace lancer
