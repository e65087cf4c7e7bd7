// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The namegauge Authors

#include <doctest.h>

#include <atomic>
#include <cstdlib>
#include <mutex>
#include <regex>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "namegauge/errors.h"
#include "namegauge/raters.h"
#include "temp_dir.h"

using namespace namegauge;
using raters::Status;
using nlohmann::json;

namespace {

corpus::MethodRecord method(const std::string& name, std::size_t line = 1) {
  corpus::MethodRecord m;
  m.name = name;
  m.notebook_path = "nb.ipynb";
  m.cell_index = 0;
  m.start_line = line;
  m.id = corpus::make_method_id(m.notebook_path, 0, line, name);
  m.source = "def " + name + "(x):\n    return x\n";
  return m;
}

std::string reply(const std::string& current, const std::string& pattern, const std::string& corrected,
                  const std::string& corrected_pattern) {
  return json{{"current_method_name", current},
              {"current_grammar_pattern", pattern},
              {"corrected_method_name", corrected},
              {"corrected_grammar_pattern", corrected_pattern}}
      .dump();
}

// The method name in a rendered prompt: the last "def NAME(" occurrence.
std::string prompted_name(const std::string& prompt) {
  static const std::regex def(R"(def ([A-Za-z_][A-Za-z0-9_]*)\()");
  std::string name;
  for (std::sregex_iterator it(prompt.begin(), prompt.end(), def), end; it != end; ++it) {
    name = (*it)[1];
  }
  return name;
}

// Chat-completions endpoint on 127.0.0.1 that answers for the prompted method.
class FakeChatServer {
 public:
  // `fail_first` requests get HTTP 500 before answers start.
  explicit FakeChatServer(int fail_first = 0) : fail_first_(fail_first) {
    server_.Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
      const int n = requests_++;
      {
        const std::lock_guard lock(mutex_);
        last_auth_ = req.get_header_value("Authorization");
        last_body_ = json::parse(req.body);
      }
      if (fail_first_ < 0 || n < fail_first_) {
        res.status = 500;
        res.set_content("overloaded", "text/plain");
        return;
      }
      const std::string prompt = json::parse(req.body)["messages"][0]["content"];
      const std::string name = prompted_name(prompt);
      const json body = {{"choices", json::array({{{"message", {{"role", "assistant"},
                                                                 {"content", reply(name, "V", name, "V")}}}}})}};
      res.set_content(body.dump(), "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeChatServer() {
    server_.stop();
    thread_.join();
  }

  std::string endpoint() const { return "http://127.0.0.1:" + std::to_string(port_) + "/v1/chat/completions"; }
  int requests() const { return requests_; }
  std::string last_auth() {
    const std::lock_guard lock(mutex_);
    return last_auth_;
  }
  json last_body() {
    const std::lock_guard lock(mutex_);
    return last_body_;
  }

 private:
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  int fail_first_;
  std::atomic<int> requests_{0};
  std::mutex mutex_;
  std::string last_auth_;
  json last_body_;
};

raters::RaterConfig live_config(const std::string& endpoint) {
  raters::RaterConfig cfg;
  cfg.rater_name = "live";
  cfg.endpoint = endpoint;
  cfg.model_id = "test-model";
  cfg.mode = raters::Mode::Live;
  cfg.max_retries = 2;
  cfg.initial_backoff = std::chrono::milliseconds(1);
  cfg.timeout = std::chrono::milliseconds(2000);
  cfg.concurrency = 3;
  return cfg;
}

}  // namespace

TEST_SUITE("raters") {

TEST_CASE("prompt contents") {
  const auto m = method("load_image");
  const auto p = raters::build_prompt(m);
  CHECK(p.method_id == m.id);
  CHECK(p.text.find("an expert software engineer specializing in Python programming") != std::string::npos);
  for (auto t : lexeme::kAllTags) {
    CHECK(p.text.find("| " + std::string(lexeme::mnemonic(t)) + " ") != std::string::npos);
  }
  CHECK(p.text.find(m.source) != std::string::npos);
  CHECK(p.text.find(raters::kTemplateVersion) != std::string::npos);
  for (auto key : {raters::kCurrentNameKey, raters::kCurrentPatternKey, raters::kCorrectedNameKey,
                   raters::kCorrectedPatternKey}) {
    CHECK(p.text.find(key) != std::string::npos);
  }
  CHECK(p.text.find("camelCase") != std::string::npos);
  CHECK(p.text.find("HTTP") != std::string::npos);
  CHECK(raters::build_prompt(m).text == p.text);
  CHECK(raters::build_prompt(method("other")).text != p.text);
}

TEST_CASE("well-formed reply is Valid") {
  const auto m = method("process_features");
  const auto out = raters::parse_response(reply("process_features", "v, npl", "process_features", "V;NPL"), m);
  CHECK(out.status == Status::Valid);
  CHECK(out.current_name == "process_features");
  CHECK(out.current_pattern->to_string() == "V,NPL");
  CHECK(out.corrected_pattern->to_string() == "V,NPL");
  CHECK(out.method_id == m.id);
}

TEST_CASE("reply embedded in prose, fences and reasoning") {
  const auto m = method("MSE");
  const std::string body = reply("mse", "N", "calculate_mean_squared_error", "V,NM,NM,N");
  CHECK(raters::parse_response("Sure! Here it is:\n```json\n" + body + "\n```\nHope this helps.", m).status ==
        Status::Valid);
  CHECK(raters::parse_response("<think>maybe {\"x\": 1}</think>" + body, m).status == Status::Valid);
  const auto out = raters::parse_response(body, m);
  CHECK(out.raw_response == body);
  CHECK(*out.corrected_name == "calculate_mean_squared_error");
}

TEST_CASE("patterns given as arrays") {
  const auto m = method("load_image");
  const json body = {{"current_method_name", "load_image"},
                     {"current_grammar_pattern", {"V", "N"}},
                     {"corrected_method_name", "load_image"},
                     {"corrected_grammar_pattern", {"V", "N"}}};
  const auto out = raters::parse_response(body.dump(), m);
  CHECK(out.status == Status::Valid);
  CHECK(out.current_pattern->to_string() == "V,N");
}

TEST_CASE("prose without an object is Malformed") {
  const auto out = raters::parse_response("The method computes the error. A better name would be compute_error.",
                                          method("MSE"));
  CHECK(out.status == Status::Malformed);
  CHECK_FALSE(out.current_pattern);
}

TEST_CASE("missing or unusable fields are Malformed") {
  const auto m = method("load_image");
  CHECK(raters::parse_response(R"({"current_method_name": "load_image", "current_grammar_pattern": "V,N"})", m)
            .status == Status::Malformed);
  CHECK(raters::parse_response(reply("load_image", "V,N", "", "V,N"), m).status == Status::Malformed);
  CHECK(raters::parse_response(reply("load_image", "V,XX", "load_image", "V,N"), m).status == Status::Malformed);
  CHECK(raters::parse_response(reply("load_image", "V,N", "load_image", "verb noun"), m).status ==
        Status::Malformed);
  CHECK(raters::parse_response("{\"current_method_name\": ", m).status == Status::Malformed);
}

TEST_CASE("reply about another method is Hallucinated") {
  const auto out = raters::parse_response(reply("compute_answer", "V,N", "compute_answer", "V,N"), method("answer"));
  CHECK(out.status == Status::Hallucinated);
  CHECK(out.current_name == "compute_answer");
  CHECK(raters::parse_response(reply("Load_Image", "V,N", "load_image", "V,N"), method("loadimage")).status ==
        Status::Valid);
}

TEST_CASE("parsing never misclassifies") {
  const auto m = method("load_image");
  const std::vector<std::string> replies = {
      reply("load_image", "V,N", "load_image", "V,N"),  reply("load_image", "Q", "x", "V"),
      reply("loadImage", "V,N", "x", "N"),              reply("other", "V,N", "x", "N"),
      "{}",                                             "nothing",
      R"({"current_method_name": 3})",                  reply("LOAD_IMAGE", "V,N", "y", "V,N,N")};
  for (const auto& r : replies) {
    const auto out = raters::parse_response(r, m);
    if (out.status == Status::Valid) {
      CHECK(out.current_pattern);
      CHECK(out.corrected_pattern);
      CHECK(out.corrected_name);
      CHECK(lexeme::normalize_name(out.current_name) == lexeme::normalize_name(m.name));
    }
    if (out.status == Status::Hallucinated) {
      CHECK(lexeme::normalize_name(out.current_name) != lexeme::normalize_name(m.name));
    }
  }
}

TEST_CASE("status names round-trip") {
  for (auto s : {Status::Valid, Status::Malformed, Status::Hallucinated, Status::Missing}) {
    CHECK(raters::parse_status(raters::status_name(s)) == s);
  }
  CHECK_FALSE(raters::parse_status("valid"));
}

TEST_CASE("rater configuration file") {
  const auto configs = raters::parse_rater_configs(
      "[gemini]\nendpoint = https://example.com/v1/chat/completions\nmodel_id = g\ntemperature = 0.5\n"
      "max_retries = 5\ntimeout_ms = 1000\nbackoff_ms = 10\nconcurrency = 2\nmode = live\n\n"
      "[local]\nmode = replay\nfixtures = replay/local\n\n[rule]\nbackend = rule\n",
      "/base");
  REQUIRE(configs.size() == 3);
  CHECK(configs[0].rater_name == "gemini");
  CHECK(configs[0].temperature == 0.5);
  CHECK(configs[0].max_retries == 5);
  CHECK(configs[0].timeout == std::chrono::milliseconds(1000));
  CHECK(configs[0].initial_backoff == std::chrono::milliseconds(10));
  CHECK(configs[0].concurrency == 2);
  CHECK(configs[0].mode == raters::Mode::Live);
  CHECK(configs[1].fixture_dir == std::filesystem::path("/base/replay/local"));
  CHECK(configs[1].temperature == 0.0);
  CHECK(configs[2].backend == raters::Backend::Rule);

  CHECK_THROWS_AS(raters::parse_rater_configs("[a]\nmode = x\n", "."), ConfigError);
  CHECK_THROWS_AS(raters::parse_rater_configs("[a]\ncolour = red\n", "."), ConfigError);
  CHECK_THROWS_AS(raters::parse_rater_configs("[a]\n[a]\n", "."), ConfigError);
  CHECK_THROWS_AS(raters::parse_rater_configs("mode = live\n", "."), ConfigError);
  CHECK_THROWS_AS(raters::parse_rater_configs("[a]\nmax_retries = many\n", "."), ConfigError);
}

TEST_CASE("api key variable and fixture names") {
  CHECK(raters::api_key_variable("gemini") == "NAMEGAUGE_API_KEY_GEMINI");
  CHECK(raters::api_key_variable("deep-seek") == "NAMEGAUGE_API_KEY_DEEP_SEEK");
  CHECK(raters::fixture_file_name("a/b.ipynb#0:3:f") == "a%2Fb.ipynb%230%3A3%3Af.txt");
}

TEST_CASE("configuration is checked before any call") {
  raters::RaterConfig replay;
  replay.rater_name = "r";
  replay.fixture_dir = "/definitely/not/here";
  CHECK_THROWS_AS(raters::run_rater(replay, {method("f")}), ConfigError);

  auto live = live_config("ftp://example.com/x");
  CHECK_THROWS_AS(raters::validate_config(live), ConfigError);
  live = live_config("http://127.0.0.1:1/v1");
  live.concurrency = 0;
  CHECK_THROWS_AS(raters::validate_config(live), ConfigError);
  live = live_config("http://127.0.0.1:1/v1");
  live.model_id.clear();
  CHECK_THROWS_AS(raters::validate_config(live), ConfigError);
}

TEST_CASE("replay classifies each fixture") {
  TempDir dir;
  raters::RaterConfig cfg;
  cfg.rater_name = "recorded";
  cfg.fixture_dir = dir.path();
  const std::vector<corpus::MethodRecord> methods = {method("load_image", 1), method("MSE", 5),
                                                     method("answer", 9), method("scale", 12)};
  write_file(dir / raters::fixture_file_name(methods[0].id), reply("load_image", "V,N", "load_image", "V,N"));
  write_file(dir / raters::fixture_file_name(methods[1].id), "I think this computes the error.");
  write_file(dir / raters::fixture_file_name(methods[2].id), reply("get_answer", "V,N", "get_answer", "V,N"));
  const auto outputs = raters::run_rater(cfg, methods);
  REQUIRE(outputs.size() == 4);
  CHECK(outputs[0].status == Status::Valid);
  CHECK(outputs[1].status == Status::Malformed);
  CHECK(outputs[2].status == Status::Hallucinated);
  CHECK(outputs[3].status == Status::Missing);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(outputs[i].method_id == methods[i].id);
    CHECK(outputs[i].rater_name == "recorded");
  }
  CHECK(outputs[1].raw_response == "I think this computes the error.");
  CHECK(raters::run_rater(cfg, methods) == outputs);
  CHECK(raters::run_rater(cfg, {}).empty());
}

TEST_CASE("live requests succeed in input order") {
  FakeChatServer server;
  ::setenv("NAMEGAUGE_API_KEY_LIVE", "secret-token", 1);
  const auto cfg = live_config(server.endpoint());
  std::vector<corpus::MethodRecord> methods;
  for (int i = 0; i < 7; ++i) methods.push_back(method("method_" + std::to_string(i), i + 1));
  const auto outputs = raters::run_rater(cfg, methods);
  ::unsetenv("NAMEGAUGE_API_KEY_LIVE");
  REQUIRE(outputs.size() == 7);
  for (std::size_t i = 0; i < 7; ++i) {
    CHECK(outputs[i].status == Status::Valid);
    CHECK(outputs[i].method_id == methods[i].id);
    CHECK(outputs[i].current_name == methods[i].name);
    CHECK_FALSE(outputs[i].raw_response.empty());
  }
  CHECK(server.requests() == 7);
  CHECK(server.last_auth() == "Bearer secret-token");
  const auto body = server.last_body();
  CHECK(body["model"] == "test-model");
  CHECK(body["temperature"] == 0.0);
  CHECK(body["messages"][0]["role"] == "user");
}

TEST_CASE("live requests are retried") {
  FakeChatServer server(2);
  auto cfg = live_config(server.endpoint());
  cfg.concurrency = 1;
  const auto outputs = raters::run_rater(cfg, {method("load_image")});
  CHECK(outputs[0].status == Status::Valid);
  CHECK(server.requests() == 3);
}

TEST_CASE("permanently failing endpoint gives Missing") {
  FakeChatServer server(-1);
  auto cfg = live_config(server.endpoint());
  const auto outputs = raters::run_rater(cfg, {method("a"), method("b", 2)});
  REQUIRE(outputs.size() == 2);
  CHECK(outputs[0].status == Status::Missing);
  CHECK(outputs[1].status == Status::Missing);
  CHECK(server.requests() == 2 * (cfg.max_retries + 1));
}

TEST_CASE("unreachable endpoint gives Missing") {
  int port = 0;
  {
    httplib::Server probe;
    port = probe.bind_to_any_port("127.0.0.1");
  }
  auto cfg = live_config("http://127.0.0.1:" + std::to_string(port) + "/v1/chat/completions");
  cfg.max_retries = 1;
  const auto outputs = raters::run_rater(cfg, {method("a")});
  CHECK(outputs[0].status == Status::Missing);
}

TEST_CASE("live replies can be saved for replay") {
  FakeChatServer server;
  TempDir dir;
  auto cfg = live_config(server.endpoint());
  cfg.record_dir = dir.path();
  const std::vector<corpus::MethodRecord> methods = {method("load_image"), method("save_model", 4)};
  const auto live = raters::run_rater(cfg, methods);

  raters::RaterConfig replay;
  replay.rater_name = cfg.rater_name;
  replay.fixture_dir = dir.path();
  CHECK(raters::run_rater(replay, methods) == live);
}

TEST_CASE("transport factory is used per worker") {
  struct Echo : raters::ChatTransport {
    std::string complete(const std::string& prompt) override {
      const auto name = prompted_name(prompt);
      return reply(name, "V", name, "V");
    }
  };
  std::atomic<int> created{0};
  auto cfg = live_config("http://127.0.0.1:9/v1");
  cfg.concurrency = 4;
  std::vector<corpus::MethodRecord> methods;
  for (int i = 0; i < 40; ++i) methods.push_back(method("m" + std::to_string(i), i + 1));
  const auto outputs = raters::run_rater(cfg, methods, [&](const raters::RaterConfig&) {
    ++created;
    return std::make_unique<Echo>();
  });
  CHECK(created == 4);
  for (std::size_t i = 0; i < methods.size(); ++i) CHECK(outputs[i].current_name == methods[i].name);
}

TEST_CASE("rule rater") {
  const auto outputs = raters::run_rule_rater("rule", {method("process_features"), method("MSE", 3)},
                                              tagger::Lexicon::default_lexicon());
  REQUIRE(outputs.size() == 2);
  CHECK(outputs[0].status == Status::Valid);
  CHECK(outputs[0].current_pattern->to_string() == "V,NPL");
  CHECK(*outputs[0].corrected_name == "process_features");
  CHECK(outputs[1].current_pattern->to_string() == "N");
  CHECK(outputs[1].rater_name == "rule");
}

TEST_CASE("common valid subset") {
  const auto make = [](std::initializer_list<std::pair<const char*, Status>> items) {
    std::vector<raters::RaterOutput> out;
    for (const auto& [id, s] : items) {
      raters::RaterOutput o;
      o.method_id = id;
      o.status = s;
      out.push_back(o);
    }
    return out;
  };
  std::map<std::string, std::vector<raters::RaterOutput>> by_rater = {
      {"x", make({{"A", Status::Valid}, {"B", Status::Valid}, {"C", Status::Valid}})},
      {"y", make({{"A", Status::Valid}, {"B", Status::Valid}, {"C", Status::Malformed}})},
      {"z", make({{"A", Status::Valid}, {"B", Status::Valid}, {"C", Status::Valid}})},
  };
  CHECK(raters::common_valid_subset(by_rater) == std::set<std::string>{"A", "B"});
  by_rater["w"] = make({{"A", Status::Missing}, {"B", Status::Hallucinated}});
  CHECK(raters::common_valid_subset(by_rater).empty());
}

TEST_CASE("common valid subset never grows when raters are added") {
  std::mt19937_64 rng(3);
  std::map<std::string, std::vector<raters::RaterOutput>> by_rater;
  std::set<std::string> previous;
  for (int r = 0; r < 6; ++r) {
    std::vector<raters::RaterOutput> outs;
    for (int i = 0; i < 50; ++i) {
      raters::RaterOutput o;
      o.method_id = "m" + std::to_string(i);
      o.status = rng() % 5 == 0 ? Status::Malformed : Status::Valid;
      outs.push_back(o);
    }
    by_rater["r" + std::to_string(r)] = outs;
    const auto now = raters::common_valid_subset(by_rater);
    if (r > 0) CHECK(std::includes(previous.begin(), previous.end(), now.begin(), now.end()));
    previous = now;
  }
}

}  // TEST_SUITE
