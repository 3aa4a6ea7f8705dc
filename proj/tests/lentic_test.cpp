#include "litonto/lentic.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>
#include <thread>

#include "support/generators.hpp"

namespace litonto::lentic {
namespace {

using Lines = std::vector<std::string>;

LiterateSource code_view(Lines lines) { return {ViewKind::CodeCentric, std::move(lines), true}; }
LiterateSource doc_view(Lines lines) { return {ViewKind::DocumentCentric, std::move(lines), true}; }

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(LITONTO_TEST_DATA_DIR) + "/" + name, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<DiagnosticCode> codes(const std::vector<Diagnostic>& ds) {
  std::vector<DiagnosticCode> out;
  for (const auto& d : ds) out.push_back(d.code);
  return out;
}

const LiterateConfig kCfg;

TEST(ToDocument, StripsPrefixFromProseAndMarkers) {
  auto out = to_document(
      code_view({";; Some text", ";; \\begin{code}", "(defclass A)", ";; \\end{code}"}), kCfg);
  EXPECT_EQ(out.view, ViewKind::DocumentCentric);
  EXPECT_EQ(out.lines, (Lines{"Some text", "\\begin{code}", "(defclass A)", "\\end{code}"}));
}

TEST(ToDocument, EmptySource) {
  EXPECT_TRUE(to_document(code_view({}), kCfg).lines.empty());
}

TEST(ToDocument, LeavesPrefixedCodeLinesAlone) {
  auto out = to_document(
      code_view({";; \\begin{code}", ";; a genuine comment inside code", ";; \\end{code}"}), kCfg);
  EXPECT_EQ(out.lines,
            (Lines{"\\begin{code}", ";; a genuine comment inside code", "\\end{code}"}));
}

TEST(ToDocument, AcceptsBarePrefixAsBlank) {
  auto out = to_document(code_view({";; a", ";;", "", ";; b"}), kCfg);
  EXPECT_EQ(out.lines, (Lines{"a", "", "", "b"}));
}

TEST(ToDocument, RejectsWrongView) {
  EXPECT_THROW(to_document(doc_view({"x"}), kCfg), std::invalid_argument);
  EXPECT_THROW(to_code(code_view({";; x"}), kCfg), std::invalid_argument);
}

TEST(ToCode, PrefixesProseAndMarkers) {
  auto out = to_code(doc_view({"Some text", "\\begin{code}", "(defclass A)", "\\end{code}"}), kCfg);
  EXPECT_EQ(out.view, ViewKind::CodeCentric);
  EXPECT_EQ(out.lines,
            (Lines{";; Some text", ";; \\begin{code}", "(defclass A)", ";; \\end{code}"}));
}

TEST(ToCode, CodeOnly) {
  auto out = to_code(doc_view({"\\begin{code}", "x", "\\end{code}"}), kCfg);
  EXPECT_EQ(out.lines, (Lines{";; \\begin{code}", "x", ";; \\end{code}"}));
}

TEST(ToCode, BlankDocumentationLinesStayBlank) {
  auto out = to_code(doc_view({"", "text"}), kCfg);
  EXPECT_EQ(out.lines, (Lines{"", ";; text"}));
  EXPECT_EQ(to_document(out, kCfg).lines, (Lines{"", "text"}));
}

TEST(ToCode, WhitespaceOnlyProseIsPrefixed) {
  auto out = to_code(doc_view({"  "}), kCfg);
  EXPECT_EQ(out.lines, (Lines{";;   "}));
  EXPECT_EQ(to_document(out, kCfg).lines, (Lines{"  "}));
}

TEST(Listing, MonosomyListingsAreMutualTransforms) {
  const auto doc = decode(slurp("k45_XX_-22_document.tex"), ViewKind::DocumentCentric);
  const auto code = decode(slurp("k45_XX_-22_code.clj"), ViewKind::CodeCentric);
  ASSERT_TRUE(doc.diagnostics.empty());
  EXPECT_TRUE(validate(doc.source, kCfg).empty());
  EXPECT_TRUE(validate(code.source, kCfg).empty());
  EXPECT_EQ(encode(to_document(code.source, kCfg)), slurp("k45_XX_-22_document.tex"));
  EXPECT_EQ(encode(to_code(doc.source, kCfg)), slurp("k45_XX_-22_code.clj"));
}

TEST(Validate, UnterminatedBlockReportsOpeningLine) {
  auto ds = validate(doc_view({"\\begin{code}", "x"}), kCfg);
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds[0].code, DiagnosticCode::UnterminatedCodeBlock);
  EXPECT_EQ(ds[0].line_number, 1u);
  EXPECT_EQ(ds[0].severity, Severity::Error);
}

TEST(Validate, UnprefixedDocLineInStrictMode) {
  auto ds = validate(code_view({";; ok", "stray"}), kCfg);
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds[0].code, DiagnosticCode::UnprefixedDocLine);
  EXPECT_EQ(ds[0].line_number, 2u);
  EXPECT_EQ(ds[0].severity, Severity::Error);
}

TEST(Validate, UnprefixedDocLineIsWarningWhenLenient) {
  auto ds = validate(code_view({";; ok", "stray"}), kCfg, Strictness::Lenient);
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds[0].severity, Severity::Warning);
}

TEST(Validate, NestedAndOrphanMarkers) {
  auto ds = validate(doc_view({"\\end{code}", "\\begin{code}", "\\begin{code}", "\\end{code}"}), kCfg);
  EXPECT_EQ(codes(ds), (std::vector{DiagnosticCode::OrphanEndMarker, DiagnosticCode::NestedBeginMarker}));
  EXPECT_EQ(ds[0].line_number, 1u);
  EXPECT_EQ(ds[1].line_number, 3u);
}

TEST(Validate, ReportsEveryProblem) {
  auto ds = validate(code_view({"stray", ";; \\end{code}", ";; \\begin{code}", "x"}), kCfg);
  EXPECT_EQ(codes(ds), (std::vector{DiagnosticCode::UnprefixedDocLine, DiagnosticCode::OrphanEndMarker,
                                    DiagnosticCode::UnterminatedCodeBlock}));
}

TEST(Validate, MarkersMustMatchExactly) {
  // Indented or trailing-space markers are ordinary prose.
  auto doc = doc_view({" \\begin{code}", "\\begin{code} ", "x"});
  EXPECT_TRUE(validate(doc, kCfg).empty());
  EXPECT_EQ(to_code(doc, kCfg).lines, (Lines{";;  \\begin{code}", ";; \\begin{code} ", ";; x"}));
}

TEST(Validate, CodeLinesThatReadAsMarkersInTheOtherView) {
  // In a document-centric code block, a prefixed end marker would close the
  // block once the file is turned into the code-centric view.
  auto ds = validate(doc_view({"\\begin{code}", ";; \\end{code}", "\\end{code}"}), kCfg);
  EXPECT_EQ(codes(ds), (std::vector{DiagnosticCode::OrphanEndMarker}));
  EXPECT_EQ(ds[0].line_number, 2u);

  ds = validate(code_view({";; \\begin{code}", "\\begin{code}", ";; \\end{code}"}), kCfg);
  EXPECT_EQ(codes(ds), (std::vector{DiagnosticCode::NestedBeginMarker}));
}

TEST(Validate, EveryLineNumberIsInRange) {
  testing::LiterateGenerator gen(7);
  for (int i = 0; i < 200; ++i) {
    auto c = gen.next();
    // Break the source by dropping a random line.
    if (c.code.lines.empty()) continue;
    c.code.lines.erase(c.code.lines.begin() + gen.uniform(0, static_cast<int>(c.code.lines.size()) - 1));
    for (const auto& d : validate(c.code, kCfg)) {
      EXPECT_GE(d.line_number, 1u);
      EXPECT_LE(d.line_number, c.code.lines.size());
    }
  }
}

TEST(Validate, FormatMatchesCliContract) {
  Diagnostic d{3, Severity::Error, DiagnosticCode::UnterminatedCodeBlock, "code block is never closed"};
  EXPECT_EQ(format(d), "line 3: UnterminatedCodeBlock code block is never closed");
}

TEST(Transform, ThrowsValidationFailedWithDiagnostics) {
  try {
    to_code(doc_view({"\\begin{code}"}), kCfg);
    FAIL() << "expected ValidationFailed";
  } catch (const ValidationFailed& e) {
    ASSERT_EQ(e.diagnostics().size(), 1u);
    EXPECT_EQ(e.diagnostics()[0].code, DiagnosticCode::UnterminatedCodeBlock);
  }
}

TEST(Lenient, UnprefixedLinesPassThroughAndBreakTheRoundTrip) {
  auto src = code_view({";; ok", "stray"});
  EXPECT_THROW(to_document(src, kCfg), ValidationFailed);
  auto doc = to_document(src, kCfg, Strictness::Lenient);
  EXPECT_EQ(doc.lines, (Lines{"ok", "stray"}));
  EXPECT_NE(to_code(doc, kCfg, Strictness::Lenient), src);
}

TEST(Propagate, EditedLabelFlowsToTheOtherView) {
  auto code = decode(slurp("k45_XX_-22_code.clj"), ViewKind::CodeCentric).source;
  auto doc = decode(slurp("k45_XX_-22_document.tex"), ViewKind::DocumentCentric).source;
  const std::string from = ":label \"The 45,XX,-22 karyotype\"";
  const std::string to = ":label \"Monosomy 22 in a female\"";
  for (auto* src : {&code, &doc}) {
    for (auto& line : src->lines) {
      if (auto p = line.find(from); p != std::string::npos) line.replace(p, from.size(), to);
    }
  }
  EXPECT_EQ(propagate(code, kCfg), doc);
  EXPECT_EQ(propagate(doc, kCfg), code);
  EXPECT_EQ(propagate(code, kCfg), to_document(code, kCfg));
}

TEST(Propagate, NoOpEditGivesFullTransform) {
  auto code = code_view({";; a", ";; \\begin{code}", "b", ";; \\end{code}"});
  EXPECT_EQ(propagate(code, kCfg), to_document(code, kCfg));
  TextEdit noop{2, 2, {";; \\begin{code}"}};
  EXPECT_EQ(propagate_edit(code, noop, kCfg), to_document(code, kCfg));
}

TEST(Propagate, DeletingEndMarkerFailsValidation) {
  auto code = code_view({";; a", ";; \\begin{code}", "b", ";; \\end{code}"});
  TextEdit drop_end{3, 4, {"b"}};
  try {
    propagate_edit(code, drop_end, kCfg);
    FAIL() << "expected ValidationFailed";
  } catch (const ValidationFailed& e) {
    ASSERT_EQ(e.diagnostics().size(), 1u);
    EXPECT_EQ(e.diagnostics()[0].code, DiagnosticCode::UnterminatedCodeBlock);
  }
}

TEST(ApplyEdit, InsertionRepeatsTheAnchorLine) {
  auto doc = doc_view({"a", "b"});
  auto out = apply_edit(doc, {1, 1, {"a", "inserted"}});
  EXPECT_EQ(out.lines, (Lines{"a", "inserted", "b"}));
  EXPECT_EQ(apply_edit(doc, {1, 2, {}}).lines, Lines{});
}

TEST(ApplyEdit, RejectsBadRanges) {
  auto doc = doc_view({"a", "b"});
  EXPECT_THROW(apply_edit(doc, {0, 1, {}}), std::out_of_range);
  EXPECT_THROW(apply_edit(doc, {2, 1, {}}), std::out_of_range);
  EXPECT_THROW(apply_edit(doc, {1, 3, {}}), std::out_of_range);
}

TEST(Decode, NormalizesCrlfWithOneWarningPerLine) {
  auto d = decode("a\r\nb\r\nc", ViewKind::DocumentCentric);
  EXPECT_EQ(d.source.lines, (Lines{"a", "b", "c"}));
  EXPECT_FALSE(d.source.trailing_newline);
  ASSERT_EQ(d.diagnostics.size(), 2u);
  EXPECT_EQ(d.diagnostics[0].code, DiagnosticCode::CarriageReturnNormalized);
  EXPECT_EQ(d.diagnostics[0].severity, Severity::Warning);
  EXPECT_EQ(d.diagnostics[1].line_number, 2u);
  EXPECT_EQ(encode(d.source), "a\nb\nc");
}

TEST(Decode, TrailingNewlineIsPreserved) {
  for (std::string text : {"", "\n", "a", "a\n", "a\n\n", "\n\nb"}) {
    auto d = decode(text, ViewKind::DocumentCentric);
    EXPECT_EQ(encode(d.source), text) << "input: " << text;
  }
}

TEST(Config, Invariants) {
  EXPECT_NO_THROW(kCfg.check());
  EXPECT_EQ(LiterateConfig::with("# ", "<<", ">>").comment_prefix_bare, "#");
  EXPECT_THROW(LiterateConfig::with("", "a", "b").check(), std::invalid_argument);
  EXPECT_THROW(LiterateConfig::with("# ", "x", "x").check(), std::invalid_argument);
  EXPECT_THROW(LiterateConfig::with("# ", "# x", "y").check(), std::invalid_argument);
  LiterateConfig bad;
  bad.comment_prefix_bare = ";";
  EXPECT_THROW(bad.check(), std::invalid_argument);
}

TEST(Config, CustomSyntax) {
  const auto cfg = LiterateConfig::with("-- ", "```haskell", "```");
  auto doc = doc_view({"Intro", "```haskell", "main = pure ()", "```"});
  auto code = to_code(doc, cfg);
  EXPECT_EQ(code.lines, (Lines{"-- Intro", "-- ```haskell", "main = pure ()", "-- ```"}));
  EXPECT_EQ(to_document(code, cfg), doc);
}

// --- properties over generated sources ----------------------------------------

TEST(Property, GeneratedViewsAreMutualTransforms) {
  testing::LiterateGenerator gen(20260101);
  for (int i = 0; i < 1500; ++i) {
    const auto c = gen.next();
    ASSERT_TRUE(validate(c.document, kCfg).empty()) << "case " << i;
    ASSERT_TRUE(validate(c.code, kCfg).empty()) << "case " << i;
    ASSERT_EQ(to_code(c.document, kCfg), c.code) << "case " << i;
    ASSERT_EQ(to_document(c.code, kCfg), c.document) << "case " << i;
    ASSERT_EQ(to_document(to_code(c.document, kCfg), kCfg), c.document) << "case " << i;
    ASSERT_EQ(to_code(to_document(c.code, kCfg), kCfg), c.code) << "case " << i;
  }
}

TEST(Property, LineRelationAndSoundness) {
  testing::LiterateGenerator gen(99);
  for (int i = 0; i < 1000; ++i) {
    const auto c = gen.next();
    const auto code = to_code(c.document, kCfg);
    ASSERT_EQ(code.lines.size(), c.document.lines.size());
    for (std::size_t n = 0; n < code.lines.size(); ++n) {
      const auto& in = c.document.lines[n];
      const auto& out = code.lines[n];
      ASSERT_TRUE(out == in || out == kCfg.comment_prefix + in) << "line " << n << " of case " << i;
    }
    EXPECT_TRUE(validate(code, kCfg).empty());
    EXPECT_TRUE(validate(to_document(code, kCfg), kCfg).empty());
    EXPECT_EQ(to_code(c.document, kCfg), code);  // deterministic
  }
}

TEST(Property, CustomConfigRoundTrips) {
  const auto cfg = LiterateConfig::with("# ", "#+BEGIN_SRC", "#+END_SRC");
  testing::LiterateGenerator gen(5, cfg);
  for (int i = 0; i < 500; ++i) {
    const auto c = gen.next();
    ASSERT_EQ(to_code(c.document, cfg), c.code);
    ASSERT_EQ(to_document(c.code, cfg), c.document);
  }
}

TEST(Property, EditsPropagateLikeFullTransforms) {
  testing::LiterateGenerator gen(1234);
  int checked = 0;
  for (int i = 0; i < 500; ++i) {
    const auto c = gen.next();
    if (c.code.lines.empty()) continue;
    const auto n = c.code.lines.size();
    const auto start = static_cast<std::size_t>(gen.uniform(1, static_cast<int>(n)));
    const auto end = static_cast<std::size_t>(gen.uniform(static_cast<int>(start), static_cast<int>(n)));
    // Replace the range with a prefixed prose line and whatever it replaced.
    TextEdit edit{start, end, {";; edited"}};
    const auto edited = apply_edit(c.code, edit);
    if (has_errors(validate(edited, kCfg))) {
      EXPECT_THROW(propagate_edit(c.code, edit, kCfg), ValidationFailed);
      continue;
    }
    EXPECT_EQ(propagate_edit(c.code, edit, kCfg), to_document(edited, kCfg));
    ++checked;
  }
  EXPECT_GT(checked, 100);
}

TEST(Concurrency, ParallelTransformsAgree) {
  testing::LiterateGenerator gen(3);
  std::vector<testing::LiterateCase> cases;
  for (int i = 0; i < 64; ++i) cases.push_back(gen.next());
  std::vector<LiterateSource> results(cases.size());
  std::vector<std::thread> threads;
  for (std::size_t t = 0; t < 4; ++t) {
    threads.emplace_back([&, t] {
      for (std::size_t i = t; i < cases.size(); i += 4) results[i] = to_code(cases[i].document, kCfg);
    });
  }
  for (auto& th : threads) th.join();
  for (std::size_t i = 0; i < cases.size(); ++i) EXPECT_EQ(results[i], cases[i].code);
}

}  // namespace
}  // namespace litonto::lentic
