#include "litonto/lentic.hpp"

#include <algorithm>
#include <sstream>

namespace litonto::lentic {

namespace {

enum class LineRole {
  Prose,       // documentation text
  Blank,       // empty documentation line
  BarePrefix,  // code-centric documentation line equal to the bare prefix
  Unprefixed,  // code-centric documentation line without prefix (lenient only)
  Marker,      // begin or end fence
  Code,
};

struct Scan {
  std::vector<LineRole> roles;
  std::vector<Diagnostic> diagnostics;
};

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

std::string trim_right(std::string s) {
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
  return s;
}

// One pass of the region state machine. Every line gets a role, even after an
// error, so that all problems are reported at once.
Scan scan(const LiterateSource& src, const LiterateConfig& cfg, Strictness strictness) {
  const bool code_view = src.view == ViewKind::CodeCentric;
  const std::string prefixed_begin = cfg.comment_prefix + cfg.begin_marker;
  const std::string prefixed_end = cfg.comment_prefix + cfg.end_marker;
  // Fence lines as they are spelled in this view and in the counterpart view.
  const std::string& own_begin = code_view ? prefixed_begin : cfg.begin_marker;
  const std::string& own_end = code_view ? prefixed_end : cfg.end_marker;
  const std::string& other_begin = code_view ? cfg.begin_marker : prefixed_begin;
  const std::string& other_end = code_view ? cfg.end_marker : prefixed_end;
  const std::string_view other_name = code_view ? "document-centric" : "code-centric";

  Scan out;
  out.roles.reserve(src.lines.size());
  auto report = [&](std::size_t index, Severity sev, DiagnosticCode code, std::string msg) {
    out.diagnostics.push_back({index + 1, sev, code, std::move(msg)});
  };

  bool in_code = false;
  std::size_t open_line = 0;
  for (std::size_t i = 0; i < src.lines.size(); ++i) {
    const std::string& line = src.lines[i];
    if (in_code) {
      if (line == own_end) {
        out.roles.push_back(LineRole::Marker);
        in_code = false;
      } else if (line == own_begin) {
        out.roles.push_back(LineRole::Code);
        report(i, Severity::Error, DiagnosticCode::NestedBeginMarker,
               "begin marker inside a code block opened at line " +
                   std::to_string(open_line + 1));
      } else if (line == other_begin) {
        out.roles.push_back(LineRole::Code);
        report(i, Severity::Error, DiagnosticCode::NestedBeginMarker,
               "code line reads as a begin marker in the " + std::string(other_name) +
                   " view");
      } else if (line == other_end) {
        out.roles.push_back(LineRole::Code);
        report(i, Severity::Error, DiagnosticCode::OrphanEndMarker,
               "code line reads as an end marker in the " + std::string(other_name) +
                   " view");
      } else {
        out.roles.push_back(LineRole::Code);
      }
      continue;
    }

    if (line == own_begin) {
      out.roles.push_back(LineRole::Marker);
      in_code = true;
      open_line = i;
    } else if (line == own_end) {
      out.roles.push_back(LineRole::Marker);
      report(i, Severity::Error, DiagnosticCode::OrphanEndMarker,
             "end marker outside a code block");
    } else if (line.empty()) {
      out.roles.push_back(LineRole::Blank);
    } else if (!code_view) {
      out.roles.push_back(LineRole::Prose);
    } else if (line == cfg.comment_prefix_bare) {
      out.roles.push_back(LineRole::BarePrefix);
    } else if (starts_with(line, cfg.comment_prefix)) {
      out.roles.push_back(LineRole::Prose);
    } else {
      out.roles.push_back(LineRole::Unprefixed);
      const bool strict = strictness == Strictness::Strict;
      report(i, strict ? Severity::Error : Severity::Warning, DiagnosticCode::UnprefixedDocLine,
             "documentation line lacks the comment prefix \"" + cfg.comment_prefix + "\"");
    }
  }
  if (in_code) {
    report(open_line, Severity::Error, DiagnosticCode::UnterminatedCodeBlock,
           "code block is never closed");
  }
  return out;
}

Scan scan_or_throw(const LiterateSource& src, const LiterateConfig& cfg, Strictness strictness) {
  cfg.check();
  Scan s = scan(src, cfg, strictness);
  if (has_errors(s.diagnostics)) throw ValidationFailed(std::move(s.diagnostics));
  return s;
}

}  // namespace

LiterateConfig LiterateConfig::with(std::string prefix, std::string begin, std::string end) {
  LiterateConfig cfg;
  cfg.comment_prefix_bare = trim_right(prefix);
  cfg.comment_prefix = std::move(prefix);
  cfg.begin_marker = std::move(begin);
  cfg.end_marker = std::move(end);
  return cfg;
}

void LiterateConfig::check() const {
  if (comment_prefix.empty()) throw std::invalid_argument("comment prefix must not be empty");
  if (begin_marker.empty() || end_marker.empty())
    throw std::invalid_argument("fence markers must not be empty");
  if (begin_marker == end_marker)
    throw std::invalid_argument("begin and end markers must differ");
  if (starts_with(begin_marker, comment_prefix) || starts_with(end_marker, comment_prefix))
    throw std::invalid_argument("fence markers must not start with the comment prefix");
  if (comment_prefix_bare != trim_right(comment_prefix))
    throw std::invalid_argument("bare prefix must equal the comment prefix without trailing blanks");
  for (const std::string* s : {&comment_prefix, &begin_marker, &end_marker}) {
    if (s->find_first_of("\r\n") != std::string::npos)
      throw std::invalid_argument("prefix and markers must be single-line");
  }
}

std::string_view to_string(ViewKind kind) {
  return kind == ViewKind::CodeCentric ? "code" : "doc";
}

std::string_view to_string(Severity severity) {
  return severity == Severity::Error ? "error" : "warning";
}

std::string_view to_string(DiagnosticCode code) {
  switch (code) {
    case DiagnosticCode::UnterminatedCodeBlock: return "UnterminatedCodeBlock";
    case DiagnosticCode::NestedBeginMarker: return "NestedBeginMarker";
    case DiagnosticCode::OrphanEndMarker: return "OrphanEndMarker";
    case DiagnosticCode::UnprefixedDocLine: return "UnprefixedDocLine";
    case DiagnosticCode::CarriageReturnNormalized: return "CarriageReturnNormalized";
  }
  return "Unknown";
}

std::string format(const Diagnostic& d) {
  std::ostringstream os;
  os << "line " << d.line_number << ": " << to_string(d.code) << " " << d.message;
  return os.str();
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

namespace {
std::string summarize(const std::vector<Diagnostic>& diagnostics) {
  std::string msg = "validation failed";
  for (const auto& d : diagnostics) {
    if (d.severity != Severity::Error) continue;
    msg += "; " + format(d);
  }
  return msg;
}
}  // namespace

ValidationFailed::ValidationFailed(std::vector<Diagnostic> diagnostics)
    : std::runtime_error(summarize(diagnostics)), diagnostics_(std::move(diagnostics)) {}

std::vector<Diagnostic> validate(const LiterateSource& src, const LiterateConfig& cfg,
                                 Strictness strictness) {
  return scan(src, cfg, strictness).diagnostics;
}

LiterateSource to_document(const LiterateSource& src, const LiterateConfig& cfg,
                           Strictness strictness) {
  if (src.view != ViewKind::CodeCentric)
    throw std::invalid_argument("to_document expects a code-centric source");
  const Scan s = scan_or_throw(src, cfg, strictness);

  LiterateSource out{ViewKind::DocumentCentric, {}, src.trailing_newline};
  out.lines.reserve(src.lines.size());
  for (std::size_t i = 0; i < src.lines.size(); ++i) {
    const std::string& line = src.lines[i];
    switch (s.roles[i]) {
      case LineRole::Prose:
      case LineRole::Marker:
        out.lines.push_back(line.substr(cfg.comment_prefix.size()));
        break;
      case LineRole::BarePrefix:
        out.lines.emplace_back();
        break;
      case LineRole::Blank:
      case LineRole::Unprefixed:
      case LineRole::Code:
        out.lines.push_back(line);
        break;
    }
  }
  return out;
}

LiterateSource to_code(const LiterateSource& src, const LiterateConfig& cfg,
                       Strictness strictness) {
  if (src.view != ViewKind::DocumentCentric)
    throw std::invalid_argument("to_code expects a document-centric source");
  const Scan s = scan_or_throw(src, cfg, strictness);

  LiterateSource out{ViewKind::CodeCentric, {}, src.trailing_newline};
  out.lines.reserve(src.lines.size());
  for (std::size_t i = 0; i < src.lines.size(); ++i) {
    const std::string& line = src.lines[i];
    switch (s.roles[i]) {
      case LineRole::Prose:
      case LineRole::Marker:
        out.lines.push_back(cfg.comment_prefix + line);
        break;
      default:
        out.lines.push_back(line);
        break;
    }
  }
  return out;
}

LiterateSource propagate(const LiterateSource& edited, const LiterateConfig& cfg,
                         Strictness strictness) {
  return edited.view == ViewKind::CodeCentric ? to_document(edited, cfg, strictness)
                                              : to_code(edited, cfg, strictness);
}

LiterateSource apply_edit(const LiterateSource& src, const TextEdit& edit) {
  if (edit.start_line < 1 || edit.start_line > edit.end_line ||
      edit.end_line > src.lines.size()) {
    throw std::out_of_range("edit range " + std::to_string(edit.start_line) + ".." +
                            std::to_string(edit.end_line) + " is outside a source of " +
                            std::to_string(src.lines.size()) + " lines");
  }
  LiterateSource out{src.view, {}, src.trailing_newline};
  const auto first = src.lines.begin() + static_cast<std::ptrdiff_t>(edit.start_line - 1);
  const auto last = src.lines.begin() + static_cast<std::ptrdiff_t>(edit.end_line);
  out.lines.reserve(src.lines.size() - (edit.end_line - edit.start_line + 1) +
                    edit.replacement.size());
  out.lines.insert(out.lines.end(), src.lines.begin(), first);
  out.lines.insert(out.lines.end(), edit.replacement.begin(), edit.replacement.end());
  out.lines.insert(out.lines.end(), last, src.lines.end());
  return out;
}

LiterateSource propagate_edit(const LiterateSource& src, const TextEdit& edit,
                              const LiterateConfig& cfg, Strictness strictness) {
  return propagate(apply_edit(src, edit), cfg, strictness);
}

DecodedText decode(std::string_view text, ViewKind view) {
  DecodedText out;
  out.source.view = view;
  out.source.trailing_newline = !text.empty() && text.back() == '\n';
  if (text.empty()) return out;

  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    const bool last = nl == std::string_view::npos;
    if (last) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    if (!last && !line.empty() && line.back() == '\r') {
      line.remove_suffix(1);
      out.diagnostics.push_back({out.source.lines.size() + 1, Severity::Warning,
                                 DiagnosticCode::CarriageReturnNormalized,
                                 "CRLF line ending normalized to LF"});
    }
    out.source.lines.emplace_back(line);
    pos = nl + 1;
  }
  return out;
}

std::string encode(const LiterateSource& src) {
  std::string out;
  for (std::size_t i = 0; i < src.lines.size(); ++i) {
    if (i != 0) out += '\n';
    out += src.lines[i];
  }
  if (src.trailing_newline) out += '\n';
  return out;
}

}  // namespace litonto::lentic
