// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The namegauge Authors

// LLM raters: prompt rendering, response validation, live and replay
// execution, and the cross-rater common valid subset.

#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "namegauge/corpus.h"
#include "namegauge/lexeme.h"
#include "namegauge/tagger.h"

namespace namegauge::raters {

enum class Mode { Live, Replay };
enum class Backend { Chat, Rule };

std::string_view mode_name(Mode mode);
std::optional<Mode> parse_mode(std::string_view text);

struct RaterConfig {
  std::string rater_name;
  Backend backend = Backend::Chat;
  std::string endpoint;  // full URL of a chat-completions endpoint
  std::string model_id;
  double temperature = 0.0;
  int max_retries = 3;
  std::chrono::milliseconds timeout{60000};
  std::chrono::milliseconds initial_backoff{500};
  std::size_t concurrency = 4;
  Mode mode = Mode::Replay;
  std::filesystem::path fixture_dir;
  // Live mode only: when set, every reply is also written as a replay fixture.
  std::filesystem::path record_dir;
};

// Environment variable holding the bearer token for a rater:
// NAMEGAUGE_API_KEY_<NAME>, name uppercased, non-alphanumerics as '_'.
std::string api_key_variable(std::string_view rater_name);

// Reads the sectioned rater file: one "[name]" section per rater with
// "key = value" lines (backend, endpoint, model_id, temperature,
// max_retries, timeout_ms, backoff_ms, concurrency, mode, fixtures).
// Relative fixture paths resolve against `base_dir`. Throws ConfigError.
std::vector<RaterConfig> parse_rater_configs(std::string_view text,
                                             const std::filesystem::path& base_dir);
std::vector<RaterConfig> load_rater_configs(const std::filesystem::path& file);

inline constexpr std::string_view kTemplateVersion = "namegauge-prompt/1";

struct PromptBundle {
  std::string method_id;
  std::string text;
};

PromptBundle build_prompt(const corpus::MethodRecord& method);

enum class Status { Valid, Malformed, Hallucinated, Missing };

std::string_view status_name(Status status);
std::optional<Status> parse_status(std::string_view text);

struct RaterOutput {
  std::string method_id;
  std::string rater_name;
  Status status = Status::Missing;
  std::string current_name;
  std::optional<lexeme::GrammarPattern> current_pattern;
  std::optional<std::string> corrected_name;
  std::optional<lexeme::GrammarPattern> corrected_pattern;
  std::string raw_response;

  friend bool operator==(const RaterOutput&, const RaterOutput&) = default;
};

// Keys of the structured reply object.
inline constexpr std::string_view kCurrentNameKey = "current_method_name";
inline constexpr std::string_view kCurrentPatternKey = "current_grammar_pattern";
inline constexpr std::string_view kCorrectedNameKey = "corrected_method_name";
inline constexpr std::string_view kCorrectedPatternKey = "corrected_grammar_pattern";

// Classifies a raw reply. The first JSON object in the text is used, after
// dropping <think> blocks; prose and code fences around it are ignored.
// Sets rater_name to empty; callers fill it in.
RaterOutput parse_response(std::string_view text, const corpus::MethodRecord& method);

// Sends one prompt and returns the model's reply text. Throws
// TransportError on any failure; the runner retries.
class ChatTransport {
 public:
  virtual ~ChatTransport() = default;
  virtual std::string complete(const std::string& prompt) = 0;
};

// One transport per worker thread.
using TransportFactory = std::function<std::unique_ptr<ChatTransport>(const RaterConfig&)>;

// HTTP chat-completions client (OpenAI-style request and response bodies).
std::unique_ptr<ChatTransport> make_http_transport(const RaterConfig& cfg);

// File name under which a method's reply is stored for replay.
std::string fixture_file_name(std::string_view method_id);

// Checks the configuration without contacting any endpoint. Throws
// ConfigError.
void validate_config(const RaterConfig& cfg);

// One output per method, in input order. Live requests run on up to
// cfg.concurrency workers and are retried with exponential backoff; a
// method whose attempts all fail is Missing. In replay mode a method
// without a fixture file is Missing.
std::vector<RaterOutput> run_rater(const RaterConfig& cfg,
                                   const std::vector<corpus::MethodRecord>& methods,
                                   const TransportFactory& transport = make_http_transport);

// The rule tagger as a rater: current pattern from rule_tag, name kept.
std::vector<RaterOutput> run_rule_rater(std::string_view rater_name,
                                        const std::vector<corpus::MethodRecord>& methods,
                                        const tagger::Lexicon& lex);

std::set<std::string> common_valid_subset(
    const std::map<std::string, std::vector<RaterOutput>>& outputs_by_rater);

}  // namespace namegauge::raters
