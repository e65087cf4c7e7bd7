// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The namegauge Authors

#include <cstdlib>

#include <httplib.h>
#include <json.hpp>

#include "namegauge/errors.h"
#include "namegauge/raters.h"

namespace namegauge::raters {

namespace {

using json = nlohmann::json;

class HttpChatTransport : public ChatTransport {
 public:
  explicit HttpChatTransport(const RaterConfig& cfg) : cfg_(cfg) {
    const std::string& url = cfg.endpoint;
    const std::size_t host_start = url.find("://") + 3;
    const std::size_t path_start = url.find('/', host_start);
    origin_ = url.substr(0, path_start);
    path_ = path_start == std::string::npos ? "/" : url.substr(path_start);
    client_ = std::make_unique<httplib::Client>(origin_);
    const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(cfg.timeout);
    const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(cfg.timeout - seconds);
    client_->set_connection_timeout(seconds.count(), micros.count());
    client_->set_read_timeout(seconds.count(), micros.count());
    client_->set_write_timeout(seconds.count(), micros.count());
    if (const char* key = std::getenv(api_key_variable(cfg.rater_name).c_str())) {
      client_->set_bearer_token_auth(key);
    }
  }

  std::string complete(const std::string& prompt) override {
    json body = {
        {"model", cfg_.model_id},
        {"temperature", cfg_.temperature},
        {"messages", json::array({{{"role", "user"}, {"content", prompt}}})},
    };
    auto res = client_->Post(path_, body.dump(), "application/json");
    if (!res) {
      throw TransportError(origin_ + path_ + ": " + httplib::to_string(res.error()));
    }
    if (res->status < 200 || res->status >= 300) {
      throw TransportError(origin_ + path_ + ": HTTP " + std::to_string(res->status));
    }
    const json reply = json::parse(res->body, nullptr, false);
    if (reply.is_discarded()) throw TransportError("response body is not JSON");
    try {
      return reply.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const json::exception&) {
      throw TransportError("response has no choices[0].message.content");
    }
  }

 private:
  RaterConfig cfg_;
  std::string origin_;
  std::string path_;
  std::unique_ptr<httplib::Client> client_;
};

}  // namespace

std::unique_ptr<ChatTransport> make_http_transport(const RaterConfig& cfg) {
  return std::make_unique<HttpChatTransport>(cfg);
}

}  // namespace namegauge::raters
