#pragma once

// A small OWL-style ontology model with a Manchester-syntax writer.
//
// Axioms are kept as an ordered list rather than a set: a literate document
// needs a stable order, so emission follows insertion order everywhere.

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace litonto::owl {

/// A prefixed name such as b:derivedFrom.
struct EntityId {
  std::string prefix;
  std::string local;

  std::string curie() const { return prefix + ":" + local; }
  friend auto operator<=>(const EntityId&, const EntityId&) = default;
};

class ClassExpression;

struct Named {
  EntityId id;
  friend bool operator==(const Named&, const Named&) = default;
};

struct And {
  std::vector<ClassExpression> operands;
};

struct Or {
  std::vector<ClassExpression> operands;
};

struct Some {
  EntityId property;
  std::shared_ptr<const ClassExpression> filler;
};

struct Exactly {
  std::uint32_t count = 0;
  EntityId property;
  std::shared_ptr<const ClassExpression> filler;
};

/// Immutable class-expression tree. Subtrees are shared, so copies are cheap.
class ClassExpression {
 public:
  using Node = std::variant<Named, And, Or, Some, Exactly>;

  ClassExpression(EntityId id) : node_(Named{std::move(id)}) {}  // NOLINT(google-explicit-constructor)
  explicit ClassExpression(Node node);

  const Node& node() const noexcept { return node_; }

  template <typename T>
  const T* as() const noexcept { return std::get_if<T>(&node_); }

  bool is_named() const noexcept { return std::holds_alternative<Named>(node_); }

  friend bool operator==(const ClassExpression& a, const ClassExpression& b);

 private:
  Node node_;
};

ClassExpression named(EntityId id);
/// Throws std::invalid_argument for fewer than two operands.
ClassExpression all_of(std::vector<ClassExpression> operands);
ClassExpression any_of(std::vector<ClassExpression> operands);
ClassExpression some(EntityId property, ClassExpression filler);
ClassExpression exactly(std::uint32_t count, EntityId property, ClassExpression filler);

/// Manchester rendering of a single expression. Fillers that are not named
/// classes are parenthesized, as are nested conjunctions and disjunctions.
std::string render(const ClassExpression& expr);

/// Compact debug rendering, e.g. And(Named(e:Deletion), Named(h:HumanChromosome22)).
std::string debug_string(const ClassExpression& expr);

enum class EntityKind { Class, ObjectProperty };
enum class AnnotationProperty { Label, Comment };

struct Declaration {
  EntityKind kind = EntityKind::Class;
  EntityId id;
};
struct SubClassOf {
  EntityId sub;
  ClassExpression super;
};
struct EquivalentTo {
  EntityId cls;
  ClassExpression expr;
};
struct DisjointClasses {
  std::vector<EntityId> members;
};
struct Annotation {
  EntityId subject;
  AnnotationProperty property = AnnotationProperty::Label;
  std::string value;
};
struct TransitiveProperty {
  EntityId id;
};
struct Import {
  std::string iri;
};

using Axiom = std::variant<Declaration, SubClassOf, EquivalentTo, DisjointClasses, Annotation,
                           TransitiveProperty, Import>;

enum class ErrorCode { DuplicateEntity, UnresolvedReference, TooFewMembers };

std::string_view to_string(ErrorCode code);

class OwlError : public std::runtime_error {
 public:
  OwlError(ErrorCode code, std::string detail);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class Ontology {
 public:
  explicit Ontology(std::string iri, std::string comment = {});

  const std::string& iri() const noexcept { return iri_; }
  const std::string& comment() const noexcept { return comment_; }
  const std::vector<std::pair<std::string, std::string>>& prefixes() const noexcept {
    return prefixes_;
  }
  const std::vector<Axiom>& axioms() const noexcept { return axioms_; }

  /// Registers `label` -> `iri`. Re-registering a label replaces its IRI.
  Ontology& add_prefix(std::string label, std::string iri);
  std::optional<std::string> resolve_prefix(std::string_view label) const;
  /// Full IRI of `id`, when its prefix is known.
  std::optional<std::string> expand(const EntityId& id) const;

  Ontology& add_import(std::string iri);

  /// Throws OwlError(DuplicateEntity) if `id` is already declared here.
  Ontology& declare(EntityKind kind, const EntityId& id);
  Ontology& declare_property(const EntityId& id, bool transitive = false);
  std::optional<EntityKind> declared_kind(const EntityId& id) const;
  bool is_declared(const EntityId& id) const { return declared_kind(id).has_value(); }

  /// Appends Declaration, then label and comment annotations when present,
  /// then one SubClassOf per super and one EquivalentTo per equivalent.
  Ontology& define_class(const EntityId& id, std::optional<std::string> label,
                         std::optional<std::string> comment,
                         std::vector<ClassExpression> supers,
                         std::vector<ClassExpression> equivalents = {});

  /// Appends one DisjointClasses axiom. Members must be declared classes.
  Ontology& as_disjoint(std::vector<EntityId> members);

  /// Raw append; Declarations are still checked for duplicates.
  Ontology& add(Axiom axiom);

  /// Classes and properties declared here, in declaration order.
  std::vector<Declaration> declarations() const;

 private:
  std::string iri_;
  std::string comment_;
  std::vector<std::pair<std::string, std::string>> prefixes_;
  std::vector<Axiom> axioms_;
  std::map<EntityId, EntityKind> declared_;
};

/// In-memory import resolution by ontology IRI.
class OntologyRegistry {
 public:
  void add(std::shared_ptr<const Ontology> ontology);
  const Ontology* find(std::string_view iri) const;

 private:
  std::map<std::string, std::shared_ptr<const Ontology>, std::less<>> by_iri_;
};

/// Throws OwlError(UnresolvedReference) if any referenced entity lacks a
/// declaration of the right kind in `o` or in an ontology it imports
/// (transitively, looked up in `registry`), or if a prefix is unknown.
void check_references(const Ontology& o, const OntologyRegistry& registry = {});

/// Whole-document Manchester syntax: prefixes, ontology header with imports,
/// one frame per declared entity in declaration order, then DisjointClasses.
std::string emit_manchester(const Ontology& o, const OntologyRegistry& registry = {});

/// The frame of a single entity, as it appears inside emit_manchester.
std::string emit_frame(const Ontology& o, const EntityId& id,
                       const OntologyRegistry& registry = {});

}  // namespace litonto::owl
