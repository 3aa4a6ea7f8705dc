#pragma once

// litonto subcommands. Each returns the process exit code:
//   0 success, 1 I/O failure, 2 domain error (validation, parse, unsupported).

#include <iosfwd>
#include <optional>
#include <string>

#include "config.hpp"
#include "litonto/lentic.hpp"

namespace litonto::cli {

enum ExitCode : int { kOk = 0, kIoError = 1, kDomainError = 2 };

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

enum class IscnAction { Parse, Build, Classify };

/// `target` is the view to produce; the input is read as the other view.
int cmd_view(lentic::ViewKind target, const std::string& input_path,
             const std::optional<std::string>& output_path, const CliConfig& cfg, Streams io);

/// Validates the file and checks that it survives a round trip through the
/// counterpart view unchanged.
int cmd_check(const std::string& input_path, lentic::ViewKind view, const CliConfig& cfg,
              Streams io);

int cmd_iscn(IscnAction action, const std::string& text, const CliConfig& cfg, Streams io);

/// Writes the ISCN example ontology as Manchester syntax.
int cmd_examples(const std::optional<std::string>& output_path, const CliConfig& cfg, Streams io);

/// Full command line entry point. `config_env` is the value of LITONTO_CONFIG.
int run(int argc, const char* const* argv, Streams io, const char* config_env);

}  // namespace litonto::cli
