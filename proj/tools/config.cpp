#include "config.hpp"

#include <sstream>

namespace litonto::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw ConfigError("config line " + std::to_string(line) + ": " + msg);
}

std::string unquote(std::string_view raw, std::size_t line) {
  if (raw.empty() || raw.front() != '"') return std::string(raw);
  std::string out;
  for (std::size_t i = 1; i < raw.size(); ++i) {
    const char c = raw[i];
    if (c == '\\') {
      if (++i == raw.size()) break;
      if (raw[i] != '"' && raw[i] != '\\') fail(line, std::string("unknown escape \\") + raw[i]);
      out += raw[i];
    } else if (c == '"') {
      if (i + 1 != raw.size()) fail(line, "text after closing quote");
      return out;
    } else {
      out += c;
    }
  }
  fail(line, "unterminated quoted value");
}

bool boolean(std::string_view value, std::size_t line) {
  if (value == "true" || value == "yes" || value == "1") return true;
  if (value == "false" || value == "no" || value == "0") return false;
  fail(line, "expected true or false, got '" + std::string(value) + "'");
}

}  // namespace

lentic::LiterateConfig CliConfig::literate() const {
  return lentic::LiterateConfig::with(comment_prefix, begin_marker, end_marker);
}

CliConfig parse_config(std::string_view text, CliConfig cfg) {
  std::istringstream in{std::string(text)};
  std::string raw_line;
  std::size_t n = 0;
  while (std::getline(in, raw_line)) {
    ++n;
    if (!raw_line.empty() && raw_line.back() == '\r') raw_line.pop_back();
    const std::string_view line = trim(raw_line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(n, "expected key = value");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string value = unquote(trim(line.substr(eq + 1)), n);

    if (key == "comment_prefix") cfg.comment_prefix = value;
    else if (key == "begin_marker") cfg.begin_marker = value;
    else if (key == "end_marker") cfg.end_marker = value;
    else if (key == "strict") cfg.strict = boolean(value, n);
    else if (key == "allow_n") cfg.allow_n = boolean(value, n);
    else if (key == "output_format") {
      if (value == "json") cfg.output_format = OutputFormat::Json;
      else if (value == "human") cfg.output_format = OutputFormat::Human;
      else fail(n, "output_format must be human or json");
    } else {
      fail(n, "unknown key '" + std::string(key) + "'");
    }
  }
  return cfg;
}

CliConfig resolve(const CliOverrides& flags, std::optional<std::string_view> config_text) {
  CliConfig cfg = config_text ? parse_config(*config_text) : CliConfig{};
  if (flags.comment_prefix) cfg.comment_prefix = *flags.comment_prefix;
  if (flags.begin_marker) cfg.begin_marker = *flags.begin_marker;
  if (flags.end_marker) cfg.end_marker = *flags.end_marker;
  if (flags.strict) cfg.strict = *flags.strict;
  if (flags.allow_n) cfg.allow_n = *flags.allow_n;
  if (flags.json) cfg.output_format = *flags.json ? OutputFormat::Json : OutputFormat::Human;
  try {
    cfg.literate().check();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

}  // namespace litonto::cli
