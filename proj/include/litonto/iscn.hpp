#pragma once

// ISCN karyotype strings, e.g. "46,XY,+21c,-21" or "46,XY,t(1;3)(p22;q13.1)".
//
// Grammar accepted here (a deliberately small subset of ISCN):
//
//   karyotype  := count "," sex ("," event)*
//   count      := [1-9][0-9]*
//   sex        := ("X" | "Y" | "N")+ ["c"]          N needs ParseOptions::allow_n
//   event      := ("+" | "-") chromosome ["c"]
//               | structural "(" chromosomes ")" "(" bands ")"
//   structural := "t" | "inv" | "del" | "dup"
//   chromosome := "1".."22" | "X" | "Y"
//   band       := ("p" | "q") digits ["." digits]
//
// Lists inside parentheses are separated by ";". No whitespace anywhere.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace litonto::iscn {

/// A human chromosome: autosome 1..22, X or Y.
class ChromosomeId {
 public:
  static ChromosomeId autosome(int number);  // throws std::out_of_range
  static ChromosomeId x() { return ChromosomeId(kX); }
  static ChromosomeId y() { return ChromosomeId(kY); }

  bool is_sex() const noexcept { return value_ >= kX; }
  bool is_x() const noexcept { return value_ == kX; }
  bool is_y() const noexcept { return value_ == kY; }
  /// 1..22 for autosomes; 0 for sex chromosomes.
  int autosome_number() const noexcept { return is_sex() ? 0 : value_; }

  /// "1".."22", "X" or "Y".
  std::string to_string() const;

  /// All 24 chromosomes, autosomes first.
  static std::vector<ChromosomeId> all();

  friend auto operator<=>(const ChromosomeId&, const ChromosomeId&) = default;

 private:
  static constexpr std::uint8_t kX = 23;
  static constexpr std::uint8_t kY = 24;
  explicit ChromosomeId(std::uint8_t v) : value_(v) {}
  std::uint8_t value_;
};

enum class SexSymbol { X, Y, N };

char to_char(SexSymbol s);

struct BandAddress {
  char arm = 'p';    // 'p' or 'q'
  std::string band;  // "22", "13.1"

  std::string to_string() const { return arm + band; }
  friend bool operator==(const BandAddress&, const BandAddress&) = default;
};

enum class StructuralType { Translocation, Inversion, Deletion, Duplication };

std::string_view symbol(StructuralType type);

struct StructuralEvent {
  StructuralType type = StructuralType::Translocation;
  std::vector<ChromosomeId> chromosomes;
  std::vector<BandAddress> bands;

  friend bool operator==(const StructuralEvent&, const StructuralEvent&) = default;
};

enum class EventKind { NumericalGain, NumericalLoss, Structural };

std::string_view to_string(EventKind kind);  // "gain", "loss", "structural"

struct IscnEvent {
  EventKind kind = EventKind::NumericalGain;
  std::optional<ChromosomeId> target;             // numerical events only
  bool constitutional = false;
  std::optional<StructuralEvent> structural;      // structural events only

  static IscnEvent gain(ChromosomeId c, bool constitutional = false);
  static IscnEvent loss(ChromosomeId c, bool constitutional = false);
  static IscnEvent rearrangement(StructuralEvent s);

  bool is_numerical() const noexcept { return kind != EventKind::Structural; }

  friend bool operator==(const IscnEvent&, const IscnEvent&) = default;
};

struct IscnKaryotype {
  int declared_count = 0;
  std::vector<SexSymbol> sex_field;
  bool sex_constitutional = false;
  std::vector<IscnEvent> events;
  std::string raw;
};

enum class ErrorCode {
  SyntaxError,
  UnknownChromosome,
  EmptyField,
  CountMismatch,
  InconsistentSexEvents,
};

std::string_view to_string(ErrorCode code);

/// Parse or validation failure. `position` is the 1-based column in the
/// input where the problem was detected.
class IscnError : public std::runtime_error {
 public:
  IscnError(ErrorCode code, std::size_t position, std::string detail);

  ErrorCode code() const noexcept { return code_; }
  std::size_t position() const noexcept { return position_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::size_t position_;
  std::string detail_;
};

struct ParseOptions {
  /// Accept "N" (unspecified sex chromosome) in the sex field.
  bool allow_n = false;
};

/// Throws IscnError (SyntaxError, UnknownChromosome, EmptyField).
IscnKaryotype parse_iscn(std::string_view text, ParseOptions options = {});

/// Renders the karyotype back to ISCN text.
std::string to_string(const IscnKaryotype& k);

/// The count the sex field and the numerical events imply:
/// 44 + |sex field| + autosomal gains - autosomal losses. Sex-chromosome
/// gains and losses are already reflected in the sex field and do not count.
int expected_count(const IscnKaryotype& k);

bool validate_count(const IscnKaryotype& k);

/// 1-based column where the event at `index` starts in `k.raw`, or 1 when
/// the raw text is unavailable.
std::size_t event_column(const IscnKaryotype& k, std::size_t index);

/// parse_iscn followed by validate_count; a mismatch is reported as
/// CountMismatch at column 1.
IscnKaryotype parse_checked(std::string_view text, ParseOptions options = {});

struct BaseComplement {
  std::vector<SexSymbol> sex_letters;  // X first, then Y, then N
  bool constitutional = false;         // the sex field carried "c"
  bool needs_generic_base = false;
};

/// Recovers the sex complement the karyotype was derived from by undoing the
/// acquired sex-chromosome gains and losses. Throws IscnError
/// (InconsistentSexEvents) when a gain cannot be undone or when a
/// sex-chromosome event is marked constitutional.
BaseComplement infer_base_complement(const IscnKaryotype& k);

}  // namespace litonto::iscn
