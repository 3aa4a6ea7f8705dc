#pragma once

// Test-only reader for the class-expression subset the writer produces:
//
//   expr    := conj ("or" conj)*
//   conj    := primary ("and" primary)*
//   primary := "(" expr ")" | name | name "some" primary | name "exactly" N primary
//
// A parenthesized expression is kept as one operand, never flattened into the
// surrounding conjunction or disjunction.

#include <cctype>
#include <utility>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "litonto/owl.hpp"

namespace litonto::testing {

class ManchesterReader {
 public:
  static owl::ClassExpression read(std::string_view text) {
    ManchesterReader r(text);
    owl::ClassExpression e = r.expr();
    if (!r.next().empty()) throw std::runtime_error("trailing input in: " + std::string(text));
    return e;
  }

 private:
  explicit ManchesterReader(std::string_view text) : text_(text) {}

  std::string next() {
    if (!peeked_.empty()) return std::exchange(peeked_, {});
    while (pos_ < text_.size() && text_[pos_] == ' ') ++pos_;
    if (pos_ >= text_.size()) return {};
    if (text_[pos_] == '(' || text_[pos_] == ')') return std::string(1, text_[pos_++]);
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != ' ' && text_[pos_] != '(' && text_[pos_] != ')') ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }
  const std::string& peek() {
    if (peeked_.empty()) peeked_ = next();
    return peeked_;
  }

  owl::ClassExpression expr() {
    std::vector<owl::ClassExpression> ops{conj()};
    while (peek() == "or") {
      next();
      ops.push_back(conj());
    }
    return ops.size() == 1 ? ops.front() : owl::any_of(std::move(ops));
  }

  owl::ClassExpression conj() {
    std::vector<owl::ClassExpression> ops{primary()};
    while (peek() == "and") {
      next();
      ops.push_back(primary());
    }
    return ops.size() == 1 ? ops.front() : owl::all_of(std::move(ops));
  }

  owl::ClassExpression primary() {
    std::string tok = next();
    if (tok == "(") {
      owl::ClassExpression e = expr();
      if (next() != ")") throw std::runtime_error("expected )");
      return e;
    }
    const owl::EntityId id = entity(tok);
    if (peek() == "some") {
      next();
      return owl::some(id, primary());
    }
    if (peek() == "exactly") {
      next();
      const std::string n = next();
      return owl::exactly(static_cast<std::uint32_t>(std::stoul(n)), id, primary());
    }
    return owl::named(id);
  }

  static owl::EntityId entity(const std::string& tok) {
    const auto colon = tok.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == tok.size())
      throw std::runtime_error("expected prefixed name, got '" + tok + "'");
    return {tok.substr(0, colon), tok.substr(colon + 1)};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::string peeked_;
};

}  // namespace litonto::testing
