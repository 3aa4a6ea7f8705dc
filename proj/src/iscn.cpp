#include "litonto/iscn.hpp"

#include <cctype>

namespace litonto::iscn {

ChromosomeId ChromosomeId::autosome(int number) {
  if (number < 1 || number > 22)
    throw std::out_of_range("autosome number out of range: " + std::to_string(number));
  return ChromosomeId(static_cast<std::uint8_t>(number));
}

std::string ChromosomeId::to_string() const {
  if (is_x()) return "X";
  if (is_y()) return "Y";
  return std::to_string(value_);
}

std::vector<ChromosomeId> ChromosomeId::all() {
  std::vector<ChromosomeId> out;
  out.reserve(24);
  for (int i = 1; i <= 22; ++i) out.push_back(autosome(i));
  out.push_back(x());
  out.push_back(y());
  return out;
}

char to_char(SexSymbol s) {
  switch (s) {
    case SexSymbol::X: return 'X';
    case SexSymbol::Y: return 'Y';
    case SexSymbol::N: return 'N';
  }
  return '?';
}

std::string_view symbol(StructuralType type) {
  switch (type) {
    case StructuralType::Translocation: return "t";
    case StructuralType::Inversion: return "inv";
    case StructuralType::Deletion: return "del";
    case StructuralType::Duplication: return "dup";
  }
  return "?";
}

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::NumericalGain: return "gain";
    case EventKind::NumericalLoss: return "loss";
    case EventKind::Structural: return "structural";
  }
  return "?";
}

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownChromosome: return "UnknownChromosome";
    case ErrorCode::EmptyField: return "EmptyField";
    case ErrorCode::CountMismatch: return "CountMismatch";
    case ErrorCode::InconsistentSexEvents: return "InconsistentSexEvents";
  }
  return "?";
}

IscnEvent IscnEvent::gain(ChromosomeId c, bool constitutional) {
  return {EventKind::NumericalGain, c, constitutional, std::nullopt};
}

IscnEvent IscnEvent::loss(ChromosomeId c, bool constitutional) {
  return {EventKind::NumericalLoss, c, constitutional, std::nullopt};
}

IscnEvent IscnEvent::rearrangement(StructuralEvent s) {
  return {EventKind::Structural, std::nullopt, false, std::move(s)};
}

IscnError::IscnError(ErrorCode code, std::size_t position, std::string detail)
    : std::runtime_error(std::string(to_string(code)) + " at column " +
                         std::to_string(position) + ": " + detail),
      code_(code),
      position_(position),
      detail_(std::move(detail)) {}

namespace {

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

class Parser {
 public:
  Parser(std::string_view text, ParseOptions options) : text_(text), options_(options) {}

  IscnKaryotype run() {
    IscnKaryotype k;
    k.raw = std::string(text_);
    if (text_.empty()) fail(ErrorCode::EmptyField, "karyotype is empty");

    k.declared_count = count();
    if (at_end()) fail(ErrorCode::SyntaxError, "expected ',' followed by the sex chromosomes");
    expect(',');
    sex_field(k);
    while (!at_end()) {
      expect(',');
      k.events.push_back(event());
    }
    return k;
  }

 private:
  [[noreturn]] void fail(ErrorCode code, std::string detail) const {
    throw IscnError(code, pos_ + 1, std::move(detail));
  }
  [[noreturn]] void fail_at(ErrorCode code, std::size_t pos, std::string detail) const {
    throw IscnError(code, pos + 1, std::move(detail));
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  std::string describe_here() const {
    if (at_end()) return "end of input";
    return std::string("'") + text_[pos_] + "'";
  }

  void expect(char c) {
    if (peek() != c) fail(ErrorCode::SyntaxError, std::string("expected '") + c + "', found " + describe_here());
    ++pos_;
  }

  void check_field_present(std::string_view what) {
    if (at_end() || peek() == ',') fail(ErrorCode::EmptyField, std::string(what) + " is empty");
  }

  // After a complete token only ',' or end of input may follow.
  void expect_field_end() {
    if (!at_end() && peek() != ',') fail(ErrorCode::SyntaxError, "unexpected " + describe_here());
  }

  std::string digits() {
    const std::size_t start = pos_;
    while (!at_end() && is_digit(peek())) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  int count() {
    check_field_present("chromosome count");
    const std::size_t start = pos_;
    std::string d = digits();
    if (d.empty()) fail(ErrorCode::SyntaxError, "expected chromosome count, found " + describe_here());
    if (d[0] == '0') fail_at(ErrorCode::SyntaxError, start, "chromosome count must be a positive number without leading zeros");
    if (d.size() > 3) fail_at(ErrorCode::SyntaxError, start, "chromosome count is implausibly large");
    expect_field_end();
    return std::stoi(d);
  }

  // Optional "c" suffix; a second one is an error.
  bool constitutional_suffix() {
    if (peek() != 'c') return false;
    ++pos_;
    if (peek() == 'c') fail(ErrorCode::SyntaxError, "duplicate constitutional marker 'c'");
    return true;
  }

  void sex_field(IscnKaryotype& k) {
    check_field_present("sex chromosome field");
    while (!at_end()) {
      const char c = peek();
      if (c == 'X') {
        k.sex_field.push_back(SexSymbol::X);
      } else if (c == 'Y') {
        k.sex_field.push_back(SexSymbol::Y);
      } else if (c == 'N') {
        if (!options_.allow_n) fail(ErrorCode::SyntaxError, "'N' in the sex field requires the allow-n extension");
        k.sex_field.push_back(SexSymbol::N);
      } else {
        break;
      }
      ++pos_;
    }
    if (k.sex_field.empty()) fail(ErrorCode::SyntaxError, "expected sex chromosomes (X, Y), found " + describe_here());
    k.sex_constitutional = constitutional_suffix();
    expect_field_end();
  }

  ChromosomeId chromosome() {
    const std::size_t start = pos_;
    if (peek() == 'X') { ++pos_; return ChromosomeId::x(); }
    if (peek() == 'Y') { ++pos_; return ChromosomeId::y(); }
    std::string d = digits();
    if (d.empty()) fail(ErrorCode::SyntaxError, "expected chromosome (1-22, X or Y), found " + describe_here());
    if (d[0] == '0' || d.size() > 2 || std::stoi(d) > 22)
      fail_at(ErrorCode::UnknownChromosome, start, "unknown chromosome '" + d + "'");
    return ChromosomeId::autosome(std::stoi(d));
  }

  BandAddress band() {
    BandAddress b;
    if (peek() != 'p' && peek() != 'q') fail(ErrorCode::SyntaxError, "expected chromosome arm 'p' or 'q', found " + describe_here());
    b.arm = peek();
    ++pos_;
    b.band = digits();
    if (b.band.empty()) fail(ErrorCode::SyntaxError, "expected band number, found " + describe_here());
    if (peek() == '.') {
      ++pos_;
      std::string sub = digits();
      if (sub.empty()) fail(ErrorCode::SyntaxError, "expected sub-band number after '.', found " + describe_here());
      b.band += "." + sub;
    }
    return b;
  }

  template <typename Item>
  std::vector<Item> parenthesized(Item (Parser::*item)()) {
    expect('(');
    std::vector<Item> out;
    out.push_back((this->*item)());
    while (peek() == ';') {
      ++pos_;
      out.push_back((this->*item)());
    }
    expect(')');
    return out;
  }

  IscnEvent event() {
    check_field_present("event");
    const char c = peek();
    if (c == '+' || c == '-') {
      ++pos_;
      const ChromosomeId target = chromosome();
      const bool constitutional = constitutional_suffix();
      expect_field_end();
      return c == '+' ? IscnEvent::gain(target, constitutional)
                      : IscnEvent::loss(target, constitutional);
    }

    const std::size_t start = pos_;
    while (!at_end() && std::islower(static_cast<unsigned char>(peek()))) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    StructuralEvent s;
    if (name == "t") s.type = StructuralType::Translocation;
    else if (name == "inv") s.type = StructuralType::Inversion;
    else if (name == "del") s.type = StructuralType::Deletion;
    else if (name == "dup") s.type = StructuralType::Duplication;
    else if (name.empty()) fail_at(ErrorCode::SyntaxError, start, "expected '+', '-' or a rearrangement symbol, found " + describe_here());
    else fail_at(ErrorCode::SyntaxError, start, "unknown rearrangement symbol '" + std::string(name) + "'");

    s.chromosomes = parenthesized(&Parser::chromosome);
    const std::size_t bands_start = pos_;
    s.bands = parenthesized(&Parser::band);
    if (s.type == StructuralType::Translocation && s.bands.size() != s.chromosomes.size())
      fail_at(ErrorCode::SyntaxError, bands_start, "translocation needs one band per chromosome");
    if (peek() == 'c') fail(ErrorCode::SyntaxError, "constitutional marker is not supported on rearrangements");
    expect_field_end();
    return IscnEvent::rearrangement(std::move(s));
  }

  std::string_view text_;
  ParseOptions options_;
  std::size_t pos_ = 0;
};

}  // namespace

std::size_t event_column(const IscnKaryotype& k, std::size_t index) {
  std::size_t commas = 0;
  for (std::size_t i = 0; i < k.raw.size(); ++i) {
    if (k.raw[i] == ',' && ++commas == index + 2) return i + 2;
  }
  return 1;
}

IscnKaryotype parse_iscn(std::string_view text, ParseOptions options) {
  return Parser(text, options).run();
}

std::string to_string(const IscnKaryotype& k) {
  std::string out = std::to_string(k.declared_count) + ",";
  for (SexSymbol s : k.sex_field) out += to_char(s);
  if (k.sex_constitutional) out += 'c';
  for (const IscnEvent& e : k.events) {
    out += ',';
    if (e.is_numerical()) {
      out += e.kind == EventKind::NumericalGain ? '+' : '-';
      out += e.target->to_string();
      if (e.constitutional) out += 'c';
      continue;
    }
    const StructuralEvent& s = *e.structural;
    out += symbol(s.type);
    out += '(';
    for (std::size_t i = 0; i < s.chromosomes.size(); ++i) {
      if (i) out += ';';
      out += s.chromosomes[i].to_string();
    }
    out += ")(";
    for (std::size_t i = 0; i < s.bands.size(); ++i) {
      if (i) out += ';';
      out += s.bands[i].to_string();
    }
    out += ')';
  }
  return out;
}

int expected_count(const IscnKaryotype& k) {
  int n = 44 + static_cast<int>(k.sex_field.size());
  for (const IscnEvent& e : k.events) {
    if (!e.is_numerical() || e.target->is_sex()) continue;
    n += e.kind == EventKind::NumericalGain ? 1 : -1;
  }
  return n;
}

bool validate_count(const IscnKaryotype& k) { return k.declared_count == expected_count(k); }

IscnKaryotype parse_checked(std::string_view text, ParseOptions options) {
  IscnKaryotype k = parse_iscn(text, options);
  if (!validate_count(k)) {
    throw IscnError(ErrorCode::CountMismatch, 1,
                    "declared count " + std::to_string(k.declared_count) +
                        " but the sex field and events imply " +
                        std::to_string(expected_count(k)));
  }
  return k;
}

BaseComplement infer_base_complement(const IscnKaryotype& k) {
  int x = 0, y = 0, n = 0;
  for (SexSymbol s : k.sex_field) {
    if (s == SexSymbol::X) ++x;
    else if (s == SexSymbol::Y) ++y;
    else ++n;
  }
  for (std::size_t i = 0; i < k.events.size(); ++i) {
    const IscnEvent& e = k.events[i];
    if (!e.is_numerical() || !e.target->is_sex()) continue;
    if (e.constitutional) {
      throw IscnError(ErrorCode::InconsistentSexEvents, event_column(k, i),
                      "constitutional sex-chromosome changes belong in the sex field");
    }
    int& slot = e.target->is_x() ? x : y;
    if (e.kind == EventKind::NumericalLoss) {
      ++slot;
    } else if (slot == 0) {
      throw IscnError(ErrorCode::InconsistentSexEvents, event_column(k, i),
                      "gain of " + e.target->to_string() + " has no matching chromosome in the sex field");
    } else {
      --slot;
    }
  }

  BaseComplement out;
  out.sex_letters.insert(out.sex_letters.end(), static_cast<std::size_t>(x), SexSymbol::X);
  out.sex_letters.insert(out.sex_letters.end(), static_cast<std::size_t>(y), SexSymbol::Y);
  out.sex_letters.insert(out.sex_letters.end(), static_cast<std::size_t>(n), SexSymbol::N);
  out.constitutional = k.sex_constitutional;
  out.needs_generic_base = k.sex_constitutional || out.sex_letters.size() != 2 || n > 0;
  return out;
}

}  // namespace litonto::iscn
