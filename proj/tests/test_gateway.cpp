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

#include <doctest.h>

#include <atomic>
#include <chrono>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "lancer/gateway.hpp"
#include "test_util.hpp"

using namespace lancer;

namespace {

/// Local OpenAI-compatible stub. Each test scripts its behavior through
/// the handler callback; the server tracks peak concurrent requests.
class StubServer {
 public:
  using Handler = std::function<void(const httplib::Request&,
                                     httplib::Response&)>;

  explicit StubServer(Handler handler) : handler_(std::move(handler)) {
    server_.Post("/chat/completions",
                 [this](const httplib::Request& req, httplib::Response& res) {
                   int now = ++active_;
                   int peak = peak_.load();
                   while (now > peak && !peak_.compare_exchange_weak(peak, now)) {
                   }
                   ++calls_;
                   handler_(req, res);
                   --active_;
                 });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  ~StubServer() {
    server_.stop();
    thread_.join();
  }

  std::string url() const {
    return "http://127.0.0.1:" + std::to_string(port_);
  }
  int peak_concurrency() const { return peak_.load(); }
  int calls() const { return calls_.load(); }

  static std::string completion_body(const std::string& text) {
    nlohmann::json body = {
        {"choices",
         {{{"message", {{"role", "assistant"}, {"content", text}}}}}}};
    return body.dump();
  }

 private:
  Handler handler_;
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<int> active_{0};
  std::atomic<int> peak_{0};
  std::atomic<int> calls_{0};
};

GatewayConfig test_config(const std::string& url) {
  GatewayConfig cfg;
  cfg.endpoint_url = url;
  cfg.model_name = "stub-model";
  cfg.max_retries = 3;
  cfg.retry_base_delay = std::chrono::milliseconds(1);
  cfg.request_timeout = std::chrono::milliseconds(5000);
  return cfg;
}

}  // namespace

TEST_CASE("mock backend answers its scripted prompt and defaults otherwise") {
  auto mock = std::make_shared<MockBackend>();
  mock->script_exact("the prompt", "4");
  GatewayConfig cfg;
  Gateway gateway(cfg, mock);

  ChatRequest req;
  req.user_prompt = "the prompt";
  CHECK(gateway.complete(req).text == "4");
  req.user_prompt = "something else";
  CHECK(gateway.complete(req).text.empty());
}

TEST_CASE("mock backend substring rules require every needle") {
  auto mock = std::make_shared<MockBackend>();
  mock->script_rule({"question A", "doc 1"}, "5");
  mock->script_rule({"question A"}, "1");
  mock->set_default_text("0");
  Gateway gateway(GatewayConfig{}, mock);

  ChatRequest req;
  req.user_prompt = "judging question A against doc 1";
  CHECK(gateway.complete(req).text == "5");
  req.user_prompt = "judging question A against doc 2";
  CHECK(gateway.complete(req).text == "1");
  req.user_prompt = "unrelated";
  CHECK(gateway.complete(req).text == "0");
}

TEST_CASE("mock backend is a pure function of prompt and script") {
  auto mock = std::make_shared<MockBackend>();
  mock->script_exact("p", "answer");
  GatewayConfig cfg;
  cfg.max_in_flight = 4;
  Gateway gateway(cfg, mock);

  std::vector<ChatRequest> reqs(100);
  for (auto& r : reqs) r.user_prompt = "p";
  auto results = gateway.complete_batch(reqs);
  REQUIRE(results.size() == 100);
  for (const auto& item : results) {
    REQUIRE(item.ok());
    CHECK(item.response->text == "answer");
  }
}

TEST_CASE("ordered mock scripts answer by submission index") {
  auto mock = std::make_shared<MockBackend>();
  mock->script_ordered({"a", "b", "c"});
  GatewayConfig cfg;
  cfg.max_in_flight = 3;
  Gateway gateway(cfg, mock);

  std::vector<ChatRequest> reqs(3);
  for (auto& r : reqs) r.user_prompt = "same prompt";
  auto results = gateway.complete_batch(reqs);
  REQUIRE(results.size() == 3);
  CHECK(results[0].response->text == "a");
  CHECK(results[1].response->text == "b");
  CHECK(results[2].response->text == "c");
}

TEST_CASE("batch preserves order and isolates per-item failures") {
  auto mock = std::make_shared<MockBackend>();
  mock->script_rule({"first"}, "1");
  mock->script_failure({"second"}, "scripted failure");
  mock->script_rule({"third"}, "3");
  Gateway gateway(GatewayConfig{}, mock);

  std::vector<ChatRequest> reqs(3);
  reqs[0].user_prompt = "first";
  reqs[1].user_prompt = "second";
  reqs[2].user_prompt = "third";
  auto results = gateway.complete_batch(reqs);
  REQUIRE(results.size() == 3);
  CHECK(results[0].ok());
  CHECK_FALSE(results[1].ok());
  CHECK(results[1].error.find("scripted failure") != std::string::npos);
  CHECK(results[2].ok());
  CHECK(results[2].response->text == "3");
}

TEST_CASE("http backend retries 500s and returns the eventual body") {
  std::atomic<int> attempt{0};
  StubServer server([&](const httplib::Request&, httplib::Response& res) {
    if (attempt.fetch_add(1) < 2) {
      res.status = 500;
      res.set_content("boom", "text/plain");
    } else {
      res.set_content(StubServer::completion_body("3"), "application/json");
    }
  });
  Gateway gateway(test_config(server.url()),
                  std::make_shared<HttpBackend>(test_config(server.url())));
  ChatRequest req;
  req.user_prompt = "rate it";
  ChatResponse resp = gateway.complete(req);
  CHECK(resp.text == "3");
  CHECK(attempt.load() == 3);
}

TEST_CASE("http backend posts the chat-completions wire format") {
  nlohmann::json seen;
  std::string auth;
  StubServer server([&](const httplib::Request& req, httplib::Response& res) {
    seen = nlohmann::json::parse(req.body);
    auth = req.get_header_value("Authorization");
    res.set_content(StubServer::completion_body("ok"), "application/json");
  });
  GatewayConfig cfg = test_config(server.url());
  cfg.api_key = "secret";
  Gateway gateway(cfg, std::make_shared<HttpBackend>(cfg));

  ChatRequest req;
  req.system_prompt = "be terse";
  req.user_prompt = "rate it";
  req.max_tokens = 8;
  CHECK(gateway.complete(req).text == "ok");
  CHECK(seen.at("model") == "stub-model");
  CHECK(seen.at("temperature") == 0.0);
  CHECK(seen.at("max_tokens") == 8);
  REQUIRE(seen.at("messages").size() == 2);
  CHECK(seen.at("messages")[0].at("role") == "system");
  CHECK(seen.at("messages")[1].at("content") == "rate it");
  CHECK(auth == "Bearer secret");
}

TEST_CASE("gateway errors carry status and attempt count after retries") {
  StubServer server([&](const httplib::Request&, httplib::Response& res) {
    res.status = 503;
    res.set_content("overloaded", "text/plain");
  });
  GatewayConfig cfg = test_config(server.url());
  cfg.max_retries = 2;
  Gateway gateway(cfg, std::make_shared<HttpBackend>(cfg));
  ChatRequest req;
  req.user_prompt = "rate it";
  try {
    gateway.complete(req);
    FAIL("expected GatewayError");
  } catch (const GatewayError& e) {
    CHECK(e.http_status() == 503);
    CHECK(e.attempts() == 3);  // max_retries + 1
  }
  CHECK(server.calls() == 3);
}

TEST_CASE("peak concurrency never exceeds max_in_flight") {
  StubServer server([&](const httplib::Request&, httplib::Response& res) {
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
    res.set_content(StubServer::completion_body("1"), "application/json");
  });
  for (int bound : {1, 3, 5}) {
    GatewayConfig cfg = test_config(server.url());
    cfg.max_in_flight = bound;
    Gateway gateway(cfg, std::make_shared<HttpBackend>(cfg));
    std::vector<ChatRequest> reqs(bound * 3 + 2);
    for (auto& r : reqs) r.user_prompt = "go";
    auto results = gateway.complete_batch(reqs);
    for (const auto& item : results) CHECK(item.ok());
    CHECK(server.peak_concurrency() <= bound);
  }
}

TEST_CASE("the in-flight bound holds across concurrent callers") {
  StubServer server([&](const httplib::Request&, httplib::Response& res) {
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
    res.set_content(StubServer::completion_body("1"), "application/json");
  });
  GatewayConfig cfg = test_config(server.url());
  cfg.max_in_flight = 2;
  Gateway gateway(cfg, std::make_shared<HttpBackend>(cfg));

  std::vector<std::thread> callers;
  for (int t = 0; t < 4; ++t) {
    callers.emplace_back([&] {
      ChatRequest req;
      req.user_prompt = "go";
      for (int i = 0; i < 3; ++i) gateway.complete(req);
    });
  }
  for (auto& t : callers) t.join();
  CHECK(server.peak_concurrency() <= 2);
}

TEST_CASE("timeouts surface as gateway errors") {
  StubServer server([&](const httplib::Request&, httplib::Response& res) {
    std::this_thread::sleep_for(std::chrono::milliseconds(1500));
    res.set_content(StubServer::completion_body("late"), "application/json");
  });
  GatewayConfig cfg = test_config(server.url());
  cfg.request_timeout = std::chrono::milliseconds(100);
  cfg.max_retries = 0;
  Gateway gateway(cfg, std::make_shared<HttpBackend>(cfg));
  ChatRequest req;
  req.user_prompt = "slow";
  CHECK_THROWS_AS(gateway.complete(req), GatewayError);
}

TEST_CASE("malformed completion bodies fail without retry") {
  StubServer server([&](const httplib::Request&, httplib::Response& res) {
    res.set_content("{\"unexpected\":true}", "application/json");
  });
  GatewayConfig cfg = test_config(server.url());
  Gateway gateway(cfg, std::make_shared<HttpBackend>(cfg));
  ChatRequest req;
  req.user_prompt = "go";
  CHECK_THROWS_AS(gateway.complete(req), GatewayError);
  CHECK(server.calls() == 1);
}

TEST_CASE("load_mock_script builds rules, default and errors from JSON") {
  lancer::test::TempDir dir;
  std::string path = dir.file("mock.json");
  lancer::test::write_file(path, R"({
    "default": "0",
    "exact": {"whole prompt": "5"},
    "rules": [
      {"contains": ["q1", "doc A"], "text": "4"},
      {"contains": "kaboom", "error": "scripted outage"}
    ]
  })");
  auto mock = load_mock_script(path);
  Gateway gateway(GatewayConfig{}, mock);
  ChatRequest req;
  req.user_prompt = "whole prompt";
  CHECK(gateway.complete(req).text == "5");
  req.user_prompt = "q1 vs doc A";
  CHECK(gateway.complete(req).text == "4");
  req.user_prompt = "kaboom";
  CHECK_THROWS_AS(gateway.complete(req), GatewayError);
  req.user_prompt = "anything";
  CHECK(gateway.complete(req).text == "0");
}

TEST_CASE("env overrides replace endpoint and api key") {
  GatewayConfig cfg;
  cfg.endpoint_url = "http://original";
  setenv("LANCER_ENDPOINT", "http://overridden", 1);
  setenv("LANCER_API_KEY", "k", 1);
  apply_env_overrides(cfg);
  unsetenv("LANCER_ENDPOINT");
  unsetenv("LANCER_API_KEY");
  CHECK(cfg.endpoint_url == "http://overridden");
  CHECK(cfg.api_key == "k");
}
