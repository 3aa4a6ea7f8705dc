#pragma once

// Karyotype modelling on top of the owl model: the human/events/base/karyotype
// vocabularies, the deletion/addition event patterns, the ISCN compiler and the
// derivation-chain sex classifier.

#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "litonto/iscn.hpp"
#include "litonto/owl.hpp"

namespace litonto::karyotype {

using owl::ClassExpression;
using owl::EntityId;

inline constexpr std::string_view kOntologyRoot = "http://www.purl.org/captau/karyotype/";

struct KaryotypeVocabulary {
  // karyotype (k)
  EntityId karyotype;
  // human (h)
  EntityId human_chromosome, human_autosome, human_sex_chromosome;
  std::vector<EntityId> autosomes;  // index 0 is chromosome 1
  EntityId chromosome_x, chromosome_y;
  // events (e)
  EntityId event, deletion, addition, has_direct_event;
  // base (b)
  EntityId k46_xx, k46_xy, k46_xn, derived_from;
  // example ontology (iexs)
  EntityId example_karyotype, male_karyotype, female_karyotype;

  std::shared_ptr<const owl::Ontology> karyotype_ontology, human, events, base;
  owl::OntologyRegistry registry;

  /// h:HumanChromosome<N|X|Y>
  const EntityId& chromosome(iscn::ChromosomeId id) const;
};

/// Built once on first use; immutable afterwards.
const KaryotypeVocabulary& vocabulary();

/// The class for one chromosome; every chromosome class comes from here.
EntityId chromosome_class(iscn::ChromosomeId id);

/// hasDirectEvent exactly n (Deletion and chrom)
ClassExpression deletion_pattern(std::uint32_t n, const EntityId& chrom);
/// hasDirectEvent exactly n (Addition and chrom)
ClassExpression addition_pattern(std::uint32_t n, const EntityId& chrom);

struct KaryotypeDefinition {
  EntityId id;
  ClassExpression base;
  std::vector<ClassExpression> acquired_events;

  /// [ISCNExampleKaryotype_subset, base, acquired events...]
  std::vector<ClassExpression> supers() const;
};

enum class ErrorCode { UnsupportedStructuralEvent, CountMismatch, ConflictingBases };

std::string_view to_string(ErrorCode code);

class KaryotypeError : public std::runtime_error {
 public:
  /// `position` is a 1-based column in the ISCN text, 0 when not applicable.
  KaryotypeError(ErrorCode code, std::string detail, std::size_t position = 0);
  ErrorCode code() const noexcept { return code_; }
  std::size_t position() const noexcept { return position_; }

 private:
  ErrorCode code_;
  std::size_t position_;
};

/// "45,XX,-22" -> iexs:k45_XX_-22
EntityId class_id_for(const iscn::IscnKaryotype& k);

/// Throws KaryotypeError (UnsupportedStructuralEvent, CountMismatch) and lets
/// iscn::IscnError (InconsistentSexEvents) propagate.
KaryotypeDefinition compile_karyotype(const iscn::IscnKaryotype& k);

/// Named base karyotypes reachable through derivedFrom restrictions, looking
/// through conjunctions.
std::set<EntityId> derivation_bases(const ClassExpression& expr);

enum class SexClass { Male, Female, Unknown };

std::string_view to_string(SexClass sex);  // "male", "female", "unknown"

/// Throws KaryotypeError(ConflictingBases) when both 46,XX and 46,XY are reachable.
SexClass classify_sex(const KaryotypeDefinition& d);

/// Same verdict, read from the SubClassOf and EquivalentTo axioms of `cls`.
SexClass classify_sex(const owl::Ontology& o, const EntityId& cls);

/// Label text for a compiled class: "The <iscn> karyotype".
std::string label_for(const iscn::IscnKaryotype& k);

/// Adds the compiled class to `o` with its label and optional comment.
void add_definition(owl::Ontology& o, const KaryotypeDefinition& d, const std::string& label,
                    const std::string& comment = {});

/// Fresh iexs ontology: prefixes, the four imports and ISCNExampleKaryotype_subset.
owl::Ontology example_ontology_skeleton();

/// The ISCN example subset: five karyotypes, their disjointness and the
/// Male/Female karyotype definitions.
owl::Ontology build_example_ontology();

}  // namespace litonto::karyotype
