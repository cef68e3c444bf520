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

#include <atomic>
#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <semaphore>
#include <string>
#include <unordered_map>
#include <vector>

#include "lancer/errors.hpp"

namespace lancer {

struct ChatRequest {
  std::optional<std::string> system_prompt;
  std::string user_prompt;
  double temperature = 0.0;
  int max_tokens = 256;
};

struct ChatResponse {
  std::string text;  // backend output, verbatim and untrimmed
  std::string backend_id;
  std::chrono::milliseconds latency{0};
};

struct GatewayConfig {
  std::string endpoint_url;  // e.g. http://localhost:8000/v1
  std::string model_name;
  std::string api_key;  // optional; sent as "Authorization: Bearer <key>"
  int max_in_flight = 8;
  int max_retries = 3;
  std::chrono::milliseconds retry_base_delay{250};
  std::chrono::milliseconds request_timeout{60000};
};

/// Applies LANCER_ENDPOINT and LANCER_API_KEY environment overrides.
void apply_env_overrides(GatewayConfig& cfg);

/// One chat completion backend. `seq` is a gateway-assigned sequence
/// number, fixed at submission order so ordered mock scripts stay
/// deterministic under concurrency. Implementations throw GatewayError.
class ChatBackend {
 public:
  virtual ~ChatBackend() = default;
  virtual std::string id() const = 0;
  virtual std::string complete(const ChatRequest& req, std::uint64_t seq) = 0;
};

/// Deterministic test backend. Keyed mode resolves the full user prompt
/// against exact entries, then substring rules in order, then the default
/// text. When an ordered script is set it takes over completely: call i
/// answers with script[i].
class MockBackend : public ChatBackend {
 public:
  std::string id() const override { return "mock"; }
  std::string complete(const ChatRequest& req, std::uint64_t seq) override;

  void script_exact(std::string user_prompt, std::string text);
  /// All needles must appear in the user prompt; first matching rule wins.
  void script_rule(std::vector<std::string> needles, std::string text);
  /// A matching prompt raises a non-retryable GatewayError.
  void script_failure(std::vector<std::string> needles, std::string message);
  void script_ordered(std::vector<std::string> script);
  void set_default_text(std::string text);
  /// Shuffles the ordered script in place; test-fixture plumbing only.
  void shuffle_script(std::uint64_t seed);

 private:
  struct Rule {
    std::vector<std::string> needles;
    std::string text;
    bool is_failure = false;
  };
  std::unordered_map<std::string, std::string> exact_;
  std::vector<Rule> rules_;
  std::vector<std::string> script_;
  bool ordered_mode_ = false;
  std::string default_text_;
};

/// Loads a mock script JSON file (keys: default, exact, rules, script)
/// into a MockBackend. See docs/FORMATS.md.
std::shared_ptr<MockBackend> load_mock_script(const std::string& path);

/// OpenAI-compatible chat-completions backend. Posts to
/// {endpoint_url}/chat/completions and reads choices[0].message.content.
class HttpBackend : public ChatBackend {
 public:
  explicit HttpBackend(GatewayConfig cfg);
  std::string id() const override { return id_; }
  std::string complete(const ChatRequest& req, std::uint64_t seq) override;

 private:
  GatewayConfig cfg_;
  std::string base_url_;     // scheme://host[:port]
  std::string path_prefix_;  // anything after the host, may be empty
  std::string id_;
};

struct BatchItem {
  std::optional<ChatResponse> response;
  std::string error;  // nonempty iff response is absent

  bool ok() const { return response.has_value(); }
};

/// Shareable front door for chat completions: global in-flight bound,
/// retries with exponential backoff and full jitter, order-preserving
/// batch fan-out with per-item failure isolation.
class Gateway {
 public:
  Gateway(GatewayConfig cfg, std::shared_ptr<ChatBackend> backend);

  const GatewayConfig& config() const { return cfg_; }

  /// Throws GatewayError carrying the attempt count once retries are
  /// exhausted (at most max_retries + 1 attempts).
  ChatResponse complete(const ChatRequest& req);

  /// Results align index-for-index with the inputs; at most max_in_flight
  /// requests are outstanding at any instant, across all callers.
  std::vector<BatchItem> complete_batch(const std::vector<ChatRequest>& reqs);

 private:
  ChatResponse complete_with_seq(const ChatRequest& req, std::uint64_t seq);

  GatewayConfig cfg_;
  std::shared_ptr<ChatBackend> backend_;
  std::counting_semaphore<> slots_;
  std::atomic<std::uint64_t> next_seq_{0};
};

}  // namespace lancer
