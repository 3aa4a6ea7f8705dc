#pragma once

// Settings shared by every litonto command, and the key-value config file.
//
// Config file format, one setting per line:
//
//   # comment
//   comment_prefix = ";; "
//   begin_marker   = \begin{code}
//   end_marker     = \end{code}
//   strict         = true
//   allow_n        = false
//   output_format  = human
//
// Unquoted values are trimmed and taken literally. Double-quoted values keep
// their whitespace and understand the escapes \" and \\.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "litonto/lentic.hpp"

namespace litonto::cli {

enum class OutputFormat { Human, Json };

struct CliConfig {
  std::string comment_prefix = ";; ";
  std::string begin_marker = "\\begin{code}";
  std::string end_marker = "\\end{code}";
  bool strict = true;
  bool allow_n = false;
  OutputFormat output_format = OutputFormat::Human;

  lentic::LiterateConfig literate() const;
  lentic::Strictness strictness() const {
    return strict ? lentic::Strictness::Strict : lentic::Strictness::Lenient;
  }
  bool json() const { return output_format == OutputFormat::Json; }
};

/// Values given on the command line; unset fields fall back to the file.
struct CliOverrides {
  std::optional<std::string> comment_prefix, begin_marker, end_marker;
  std::optional<bool> strict, allow_n, json;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Applies the settings in `text` on top of `base`. Throws ConfigError with a
/// line number on malformed input.
CliConfig parse_config(std::string_view text, CliConfig base = {});

/// defaults < config file < flags. Throws ConfigError, including when the
/// resulting literate settings are inconsistent.
CliConfig resolve(const CliOverrides& flags, std::optional<std::string_view> config_text);

}  // namespace litonto::cli
