// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The namegauge Authors

#include "namegauge/raters.h"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "namegauge/errors.h"
#include "namegauge/sectioned_text.h"

namespace namegauge::raters {

namespace {

using json = nlohmann::json;

std::string read_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool valid_rater_name(std::string_view name) {
  return !name.empty() && std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  });
}

template <typename T>
T parse_number(const std::string& rater, const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    T out;
    if constexpr (std::is_floating_point_v<T>) {
      out = static_cast<T>(std::stod(value, &used));
    } else {
      const long long v = std::stoll(value, &used);
      if (v < 0) throw std::out_of_range("negative");
      out = static_cast<T>(v);
    }
    if (used != value.size()) throw std::invalid_argument("trailing");
    return out;
  } catch (const std::logic_error&) {
    throw ConfigError("rater '" + rater + "': bad value '" + value + "' for " + key);
  }
}

// Removes <think>...</think> reasoning blocks some models prepend.
std::string strip_think_blocks(std::string_view text) {
  std::string out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t open = text.find("<think>", pos);
    if (open == std::string_view::npos) break;
    const std::size_t close = text.find("</think>", open);
    if (close == std::string_view::npos) break;
    out.append(text.substr(pos, open - pos));
    pos = close + 8;
  }
  out.append(text.substr(pos));
  return out;
}

// Index one past the '}' closing the object opened at `open`, or npos.
std::size_t match_object(std::string_view text, std::size_t open) {
  int depth = 0;
  bool in_string = false;
  for (std::size_t i = open; i < text.size(); ++i) {
    const char c = text[i];
    if (in_string) {
      if (c == '\\') {
        ++i;
      } else if (c == '"') {
        in_string = false;
      }
    } else if (c == '"') {
      in_string = true;
    } else if (c == '{') {
      ++depth;
    } else if (c == '}') {
      if (--depth == 0) return i + 1;
    }
  }
  return std::string_view::npos;
}

std::optional<json> first_json_object(std::string_view text) {
  for (std::size_t open = text.find('{'); open != std::string_view::npos;
       open = text.find('{', open + 1)) {
    const std::size_t end = match_object(text, open);
    if (end == std::string_view::npos) continue;
    json value = json::parse(text.substr(open, end - open), nullptr, false);
    if (!value.is_discarded() && value.is_object()) return value;
  }
  return std::nullopt;
}

// String field, or a pattern given as an array of tag strings.
std::optional<std::string> text_field(const json& obj, std::string_view key, bool allow_array) {
  const auto it = obj.find(std::string(key));
  if (it == obj.end()) return std::nullopt;
  if (it->is_string()) {
    std::string value(trim_view(it->get_ref<const std::string&>()));
    if (value.empty()) return std::nullopt;
    return value;
  }
  if (allow_array && it->is_array() && !it->empty()) {
    std::string joined;
    for (const auto& tag : *it) {
      if (!tag.is_string()) return std::nullopt;
      if (!joined.empty()) joined += ',';
      joined += tag.get<std::string>();
    }
    return joined;
  }
  return std::nullopt;
}

std::optional<lexeme::GrammarPattern> try_pattern(const std::optional<std::string>& text) {
  if (!text) return std::nullopt;
  try {
    return lexeme::parse_pattern(*text);
  } catch (const BadPattern&) {
    return std::nullopt;
  }
}

std::string percent_encode(std::string_view s) {
  std::string out;
  for (char c : s) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isalnum(u) || c == '.' || c == '-' || c == '_') {
      out += c;
    } else {
      char buf[4];
      std::snprintf(buf, sizeof buf, "%%%02X", u);
      out += buf;
    }
  }
  return out;
}

RaterOutput missing_output(const RaterConfig& cfg, const corpus::MethodRecord& method) {
  RaterOutput out;
  out.method_id = method.id;
  out.rater_name = cfg.rater_name;
  out.status = Status::Missing;
  return out;
}

RaterOutput run_live_one(const RaterConfig& cfg, ChatTransport& transport,
                         const corpus::MethodRecord& method) {
  const PromptBundle prompt = build_prompt(method);
  auto delay = cfg.initial_backoff;
  for (int attempt = 0; attempt <= cfg.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(delay);
      delay *= 2;
    }
    try {
      const std::string reply = transport.complete(prompt.text);
      if (!cfg.record_dir.empty()) {
        std::ofstream(cfg.record_dir / fixture_file_name(method.id), std::ios::binary) << reply;
      }
      RaterOutput out = parse_response(reply, method);
      out.rater_name = cfg.rater_name;
      return out;
    } catch (const std::exception& e) {
      static std::mutex log_mutex;
      const std::lock_guard lock(log_mutex);
      std::cerr << "namegauge: " << cfg.rater_name << ": " << method.id << ": attempt "
                << attempt + 1 << " failed: " << e.what() << '\n';
    }
  }
  return missing_output(cfg, method);
}

}  // namespace

std::string_view mode_name(Mode mode) { return mode == Mode::Live ? "live" : "replay"; }

std::optional<Mode> parse_mode(std::string_view text) {
  if (text == "live") return Mode::Live;
  if (text == "replay") return Mode::Replay;
  return std::nullopt;
}

std::string api_key_variable(std::string_view rater_name) {
  std::string var = "NAMEGAUGE_API_KEY_";
  for (char c : rater_name) {
    var += std::isalnum(static_cast<unsigned char>(c))
               ? static_cast<char>(std::toupper(static_cast<unsigned char>(c)))
               : '_';
  }
  return var;
}

std::vector<RaterConfig> parse_rater_configs(std::string_view text,
                                             const std::filesystem::path& base_dir) {
  std::vector<RaterConfig> configs;
  for (const Section& section : parse_sections(text)) {
    if (section.name.empty()) throw ConfigError("settings outside a [rater] section");
    if (!valid_rater_name(section.name)) {
      throw ConfigError("rater name '" + section.name + "' must use letters, digits, '_' or '-'");
    }
    for (const auto& c : configs) {
      if (c.rater_name == section.name) throw ConfigError("duplicate rater '" + section.name + "'");
    }
    RaterConfig cfg;
    cfg.rater_name = section.name;
    for (const auto& [line_no, line] : section.lines) {
      std::string key, value;
      if (!split_key_value(line, key, value)) {
        throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
      }
      if (key == "backend") {
        if (value == "chat") {
          cfg.backend = Backend::Chat;
        } else if (value == "rule") {
          cfg.backend = Backend::Rule;
        } else {
          throw ConfigError("rater '" + cfg.rater_name + "': unknown backend '" + value + "'");
        }
      } else if (key == "endpoint") {
        cfg.endpoint = value;
      } else if (key == "model_id") {
        cfg.model_id = value;
      } else if (key == "temperature") {
        cfg.temperature = parse_number<double>(cfg.rater_name, key, value);
      } else if (key == "max_retries") {
        cfg.max_retries = parse_number<int>(cfg.rater_name, key, value);
      } else if (key == "timeout_ms") {
        cfg.timeout = std::chrono::milliseconds(parse_number<long long>(cfg.rater_name, key, value));
      } else if (key == "backoff_ms") {
        cfg.initial_backoff =
            std::chrono::milliseconds(parse_number<long long>(cfg.rater_name, key, value));
      } else if (key == "concurrency") {
        cfg.concurrency = parse_number<std::size_t>(cfg.rater_name, key, value);
      } else if (key == "mode") {
        const auto mode = parse_mode(value);
        if (!mode) throw ConfigError("rater '" + cfg.rater_name + "': mode must be live or replay");
        cfg.mode = *mode;
      } else if (key == "fixtures") {
        const std::filesystem::path p(value);
        cfg.fixture_dir = p.is_absolute() ? p : base_dir / p;
      } else {
        throw ConfigError("rater '" + cfg.rater_name + "': unknown key '" + key + "'");
      }
    }
    configs.push_back(std::move(cfg));
  }
  return configs;
}

std::vector<RaterConfig> load_rater_configs(const std::filesystem::path& file) {
  if (!std::filesystem::is_regular_file(file)) {
    throw ConfigError("cannot read rater config " + file.string());
  }
  return parse_rater_configs(read_file(file), file.parent_path());
}

std::string_view status_name(Status status) {
  switch (status) {
    case Status::Valid: return "Valid";
    case Status::Malformed: return "Malformed";
    case Status::Hallucinated: return "Hallucinated";
    case Status::Missing: return "Missing";
  }
  return "?";
}

std::optional<Status> parse_status(std::string_view text) {
  for (Status s : {Status::Valid, Status::Malformed, Status::Hallucinated, Status::Missing}) {
    if (status_name(s) == text) return s;
  }
  return std::nullopt;
}

RaterOutput parse_response(std::string_view text, const corpus::MethodRecord& method) {
  RaterOutput out;
  out.method_id = method.id;
  out.raw_response = std::string(text);
  out.status = Status::Malformed;

  const auto obj = first_json_object(strip_think_blocks(text));
  if (!obj) return out;

  const auto current_name = text_field(*obj, kCurrentNameKey, false);
  const auto current_pattern = text_field(*obj, kCurrentPatternKey, true);
  const auto corrected_name = text_field(*obj, kCorrectedNameKey, false);
  const auto corrected_pattern = text_field(*obj, kCorrectedPatternKey, true);
  if (current_name) out.current_name = *current_name;
  out.corrected_name = corrected_name;
  out.current_pattern = try_pattern(current_pattern);
  out.corrected_pattern = try_pattern(corrected_pattern);

  if (!current_name || !current_pattern || !corrected_name || !corrected_pattern) return out;
  if (lexeme::normalize_name(*current_name) != lexeme::normalize_name(method.name)) {
    out.status = Status::Hallucinated;
    return out;
  }
  if (!out.current_pattern || !out.corrected_pattern) return out;
  out.status = Status::Valid;
  return out;
}

std::string fixture_file_name(std::string_view method_id) {
  return percent_encode(method_id) + ".txt";
}

void validate_config(const RaterConfig& cfg) {
  if (!valid_rater_name(cfg.rater_name)) {
    throw ConfigError("rater name '" + cfg.rater_name + "' is not valid");
  }
  if (cfg.backend == Backend::Rule) return;
  if (cfg.mode == Mode::Replay) {
    if (cfg.fixture_dir.empty() || !std::filesystem::is_directory(cfg.fixture_dir)) {
      throw ConfigError("rater '" + cfg.rater_name + "': replay fixture directory '" +
                        cfg.fixture_dir.string() + "' does not exist");
    }
    return;
  }
  const std::string_view url = cfg.endpoint;
  const bool http = url.rfind("http://", 0) == 0 || url.rfind("https://", 0) == 0;
  const std::size_t host_start = url.find("://") == std::string_view::npos ? 0 : url.find("://") + 3;
  if (!http || host_start >= url.size() || url[host_start] == '/') {
    throw ConfigError("rater '" + cfg.rater_name + "': endpoint '" + cfg.endpoint +
                      "' is not an http(s) URL");
  }
  if (cfg.model_id.empty()) throw ConfigError("rater '" + cfg.rater_name + "': model_id is required");
  if (cfg.concurrency == 0) throw ConfigError("rater '" + cfg.rater_name + "': concurrency must be >= 1");
  if (!cfg.record_dir.empty() && !std::filesystem::is_directory(cfg.record_dir)) {
    throw ConfigError("rater '" + cfg.rater_name + "': record directory '" + cfg.record_dir.string() +
                      "' does not exist");
  }
}

std::vector<RaterOutput> run_rater(const RaterConfig& cfg,
                                   const std::vector<corpus::MethodRecord>& methods,
                                   const TransportFactory& transport) {
  validate_config(cfg);
  if (cfg.backend == Backend::Rule) {
    return run_rule_rater(cfg.rater_name, methods, tagger::Lexicon::default_lexicon());
  }
  std::vector<RaterOutput> outputs(methods.size());

  if (cfg.mode == Mode::Replay) {
    for (std::size_t i = 0; i < methods.size(); ++i) {
      const auto file = cfg.fixture_dir / fixture_file_name(methods[i].id);
      if (!std::filesystem::is_regular_file(file)) {
        outputs[i] = missing_output(cfg, methods[i]);
        continue;
      }
      outputs[i] = parse_response(read_file(file), methods[i]);
      outputs[i].rater_name = cfg.rater_name;
    }
    return outputs;
  }

  // Workers claim indexes from a shared counter; results land in input order.
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    auto client = transport(cfg);
    for (std::size_t i = next++; i < methods.size(); i = next++) {
      outputs[i] = run_live_one(cfg, *client, methods[i]);
    }
  };
  const std::size_t workers = std::min(cfg.concurrency, methods.size());
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  pool.clear();
  return outputs;
}

std::vector<RaterOutput> run_rule_rater(std::string_view rater_name,
                                        const std::vector<corpus::MethodRecord>& methods,
                                        const tagger::Lexicon& lex) {
  std::vector<RaterOutput> outputs;
  outputs.reserve(methods.size());
  for (const auto& method : methods) {
    RaterOutput out;
    out.method_id = method.id;
    out.rater_name = std::string(rater_name);
    out.current_name = method.name;
    try {
      const auto pattern = tagger::rule_tag(lexeme::split_identifier(method.name), lex);
      out.status = Status::Valid;
      out.current_pattern = pattern;
      out.corrected_name = method.name;
      out.corrected_pattern = pattern;
    } catch (const Error& e) {
      out.status = Status::Malformed;
      out.raw_response = e.what();
    }
    outputs.push_back(std::move(out));
  }
  return outputs;
}

std::set<std::string> common_valid_subset(
    const std::map<std::string, std::vector<RaterOutput>>& outputs_by_rater) {
  std::set<std::string> result;
  bool first = true;
  for (const auto& [name, outputs] : outputs_by_rater) {
    std::set<std::string> valid;
    for (const auto& out : outputs) {
      if (out.status == Status::Valid) valid.insert(out.method_id);
    }
    if (first) {
      result = std::move(valid);
      first = false;
    } else {
      std::set<std::string> both;
      std::set_intersection(result.begin(), result.end(), valid.begin(), valid.end(),
                            std::inserter(both, both.end()));
      result = std::move(both);
    }
  }
  return result;
}

}  // namespace namegauge::raters
