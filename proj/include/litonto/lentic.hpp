#pragma once

// Lenticular text: one literate source held as two views that carry the same
// text with different syntax.
//
//   DocumentCentric   prose is bare, code sits between bare fence markers.
//   CodeCentric       code is bare, prose and fence markers carry a comment
//                     prefix so the file is valid source code.
//
// The transformations are line-for-line: line N of one view always corresponds
// to line N of the other.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace litonto::lentic {

enum class ViewKind { DocumentCentric, CodeCentric };

/// Syntax of the two views.
struct LiterateConfig {
  std::string comment_prefix = ";; ";
  std::string comment_prefix_bare = ";;";
  std::string begin_marker = "\\begin{code}";
  std::string end_marker = "\\end{code}";

  /// Builds a config whose bare prefix is derived from `prefix` by dropping
  /// trailing whitespace.
  static LiterateConfig with(std::string prefix, std::string begin, std::string end);

  /// Throws std::invalid_argument when an invariant does not hold.
  void check() const;
};

struct LiterateSource {
  ViewKind view = ViewKind::DocumentCentric;
  std::vector<std::string> lines;
  bool trailing_newline = true;

  friend bool operator==(const LiterateSource&, const LiterateSource&) = default;
};

enum class Severity { Error, Warning };

enum class DiagnosticCode {
  UnterminatedCodeBlock,
  NestedBeginMarker,
  OrphanEndMarker,
  UnprefixedDocLine,
  CarriageReturnNormalized,
};

struct Diagnostic {
  std::size_t line_number = 0;  // 1-based
  Severity severity = Severity::Error;
  DiagnosticCode code = DiagnosticCode::UnterminatedCodeBlock;
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

std::string_view to_string(ViewKind kind);
std::string_view to_string(Severity severity);
std::string_view to_string(DiagnosticCode code);

/// "line N: CODE message"
std::string format(const Diagnostic& d);

bool has_errors(const std::vector<Diagnostic>& diagnostics);

class ValidationFailed : public std::runtime_error {
 public:
  explicit ValidationFailed(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

/// Strict mode rejects unprefixed documentation lines in a code-centric view.
/// Lenient mode reports them as warnings and carries them through unchanged,
/// which means the round trip is no longer exact for such sources.
enum class Strictness { Strict, Lenient };

std::vector<Diagnostic> validate(const LiterateSource& src, const LiterateConfig& cfg,
                                 Strictness strictness = Strictness::Strict);

/// Code-centric -> document-centric. Throws ValidationFailed.
LiterateSource to_document(const LiterateSource& src, const LiterateConfig& cfg,
                           Strictness strictness = Strictness::Strict);

/// Document-centric -> code-centric. Throws ValidationFailed.
LiterateSource to_code(const LiterateSource& src, const LiterateConfig& cfg,
                       Strictness strictness = Strictness::Strict);

/// Returns the counterpart view of `edited`.
LiterateSource propagate(const LiterateSource& edited, const LiterateConfig& cfg,
                         Strictness strictness = Strictness::Strict);

/// Replaces lines [start_line, end_line] (1-based, inclusive). Insertions are
/// written as a one-line range whose replacement repeats the original line.
struct TextEdit {
  std::size_t start_line = 1;
  std::size_t end_line = 1;
  std::vector<std::string> replacement;
};

/// Throws std::out_of_range when the range is outside the source.
LiterateSource apply_edit(const LiterateSource& src, const TextEdit& edit);

/// Applies `edit` to one view and returns the refreshed counterpart view.
LiterateSource propagate_edit(const LiterateSource& src, const TextEdit& edit,
                              const LiterateConfig& cfg,
                              Strictness strictness = Strictness::Strict);

/// Result of decoding raw file bytes into a source.
struct DecodedText {
  LiterateSource source;
  std::vector<Diagnostic> diagnostics;  // CarriageReturnNormalized warnings
};

/// Splits UTF-8 text on LF. CRLF pairs become LF and are reported once per line.
DecodedText decode(std::string_view text, ViewKind view);

/// Joins lines with LF, appending a final LF when trailing_newline is set.
std::string encode(const LiterateSource& src);

}  // namespace litonto::lentic
