#include "litonto/owl.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace litonto::owl {

// --- class expressions -------------------------------------------------------

ClassExpression::ClassExpression(Node node) : node_(std::move(node)) {}

namespace {

bool same_operands(const std::vector<ClassExpression>& a, const std::vector<ClassExpression>& b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin());
}

bool same_filler(const std::shared_ptr<const ClassExpression>& a,
                 const std::shared_ptr<const ClassExpression>& b) {
  if (a == b) return true;
  return a && b && *a == *b;
}

}  // namespace

bool operator==(const ClassExpression& a, const ClassExpression& b) {
  if (a.node_.index() != b.node_.index()) return false;
  return std::visit(
      [&b](const auto& lhs) -> bool {
        using T = std::decay_t<decltype(lhs)>;
        const T& rhs = std::get<T>(b.node_);
        if constexpr (std::is_same_v<T, Named>) {
          return lhs.id == rhs.id;
        } else if constexpr (std::is_same_v<T, And> || std::is_same_v<T, Or>) {
          return same_operands(lhs.operands, rhs.operands);
        } else if constexpr (std::is_same_v<T, Some>) {
          return lhs.property == rhs.property && same_filler(lhs.filler, rhs.filler);
        } else {
          return lhs.count == rhs.count && lhs.property == rhs.property &&
                 same_filler(lhs.filler, rhs.filler);
        }
      },
      a.node_);
}

ClassExpression named(EntityId id) { return ClassExpression(std::move(id)); }

ClassExpression all_of(std::vector<ClassExpression> operands) {
  if (operands.size() < 2) throw std::invalid_argument("conjunction needs at least two operands");
  return ClassExpression(And{std::move(operands)});
}

ClassExpression any_of(std::vector<ClassExpression> operands) {
  if (operands.size() < 2) throw std::invalid_argument("disjunction needs at least two operands");
  return ClassExpression(Or{std::move(operands)});
}

ClassExpression some(EntityId property, ClassExpression filler) {
  return ClassExpression(
      Some{std::move(property), std::make_shared<const ClassExpression>(std::move(filler))});
}

ClassExpression exactly(std::uint32_t count, EntityId property, ClassExpression filler) {
  return ClassExpression(Exactly{count, std::move(property),
                                 std::make_shared<const ClassExpression>(std::move(filler))});
}

namespace {

void render_into(std::string& out, const ClassExpression& expr);

void render_filler(std::string& out, const ClassExpression& filler) {
  if (filler.is_named()) {
    render_into(out, filler);
    return;
  }
  out += '(';
  render_into(out, filler);
  out += ')';
}

void render_operands(std::string& out, const std::vector<ClassExpression>& operands,
                     std::string_view keyword) {
  for (std::size_t i = 0; i < operands.size(); ++i) {
    if (i) {
      out += ' ';
      out += keyword;
      out += ' ';
    }
    const ClassExpression& op = operands[i];
    const bool group = op.as<And>() != nullptr || op.as<Or>() != nullptr;
    if (group) out += '(';
    render_into(out, op);
    if (group) out += ')';
  }
}

void render_into(std::string& out, const ClassExpression& expr) {
  if (const auto* n = expr.as<Named>()) {
    out += n->id.curie();
  } else if (const auto* a = expr.as<And>()) {
    render_operands(out, a->operands, "and");
  } else if (const auto* o = expr.as<Or>()) {
    render_operands(out, o->operands, "or");
  } else if (const auto* s = expr.as<Some>()) {
    out += s->property.curie();
    out += " some ";
    render_filler(out, *s->filler);
  } else if (const auto* e = expr.as<Exactly>()) {
    out += e->property.curie();
    out += " exactly ";
    out += std::to_string(e->count);
    out += ' ';
    render_filler(out, *e->filler);
  }
}

void debug_into(std::ostream& os, const ClassExpression& expr) {
  auto list = [&os](std::string_view name, const std::vector<ClassExpression>& ops) {
    os << name << '(';
    for (std::size_t i = 0; i < ops.size(); ++i) {
      if (i) os << ", ";
      debug_into(os, ops[i]);
    }
    os << ')';
  };
  if (const auto* n = expr.as<Named>()) {
    os << "Named(" << n->id.curie() << ')';
  } else if (const auto* a = expr.as<And>()) {
    list("And", a->operands);
  } else if (const auto* o = expr.as<Or>()) {
    list("Or", o->operands);
  } else if (const auto* s = expr.as<Some>()) {
    os << "Some(" << s->property.curie() << ", ";
    debug_into(os, *s->filler);
    os << ')';
  } else if (const auto* e = expr.as<Exactly>()) {
    os << "Exactly(" << e->count << ", " << e->property.curie() << ", ";
    debug_into(os, *e->filler);
    os << ')';
  }
}

}  // namespace

std::string render(const ClassExpression& expr) {
  std::string out;
  render_into(out, expr);
  return out;
}

std::string debug_string(const ClassExpression& expr) {
  std::ostringstream os;
  debug_into(os, expr);
  return os.str();
}

// --- errors ------------------------------------------------------------------

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateEntity: return "DuplicateEntity";
    case ErrorCode::UnresolvedReference: return "UnresolvedReference";
    case ErrorCode::TooFewMembers: return "TooFewMembers";
  }
  return "?";
}

OwlError::OwlError(ErrorCode code, std::string detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

// --- ontology ----------------------------------------------------------------

Ontology::Ontology(std::string iri, std::string comment)
    : iri_(std::move(iri)), comment_(std::move(comment)) {}

Ontology& Ontology::add_prefix(std::string label, std::string iri) {
  for (auto& [existing, target] : prefixes_) {
    if (existing == label) {
      target = std::move(iri);
      return *this;
    }
  }
  prefixes_.emplace_back(std::move(label), std::move(iri));
  return *this;
}

std::optional<std::string> Ontology::resolve_prefix(std::string_view label) const {
  for (const auto& [existing, target] : prefixes_) {
    if (existing == label) return target;
  }
  return std::nullopt;
}

std::optional<std::string> Ontology::expand(const EntityId& id) const {
  auto base = resolve_prefix(id.prefix);
  if (!base) return std::nullopt;
  return *base + id.local;
}

Ontology& Ontology::add_import(std::string iri) { return add(Import{std::move(iri)}); }

Ontology& Ontology::declare(EntityKind kind, const EntityId& id) {
  return add(Declaration{kind, id});
}

Ontology& Ontology::declare_property(const EntityId& id, bool transitive) {
  declare(EntityKind::ObjectProperty, id);
  if (transitive) add(TransitiveProperty{id});
  return *this;
}

std::optional<EntityKind> Ontology::declared_kind(const EntityId& id) const {
  auto it = declared_.find(id);
  if (it == declared_.end()) return std::nullopt;
  return it->second;
}

Ontology& Ontology::define_class(const EntityId& id, std::optional<std::string> label,
                                 std::optional<std::string> comment,
                                 std::vector<ClassExpression> supers,
                                 std::vector<ClassExpression> equivalents) {
  declare(EntityKind::Class, id);
  if (label) add(Annotation{id, AnnotationProperty::Label, std::move(*label)});
  if (comment) add(Annotation{id, AnnotationProperty::Comment, std::move(*comment)});
  for (auto& s : supers) add(SubClassOf{id, std::move(s)});
  for (auto& e : equivalents) add(EquivalentTo{id, std::move(e)});
  return *this;
}

Ontology& Ontology::as_disjoint(std::vector<EntityId> members) {
  if (members.size() < 2)
    throw OwlError(ErrorCode::TooFewMembers, "disjointness needs at least two classes");
  for (const auto& m : members) {
    if (declared_kind(m) != EntityKind::Class)
      throw OwlError(ErrorCode::UnresolvedReference, m.curie() + " is not a declared class");
  }
  return add(DisjointClasses{std::move(members)});
}

Ontology& Ontology::add(Axiom axiom) {
  if (const auto* d = std::get_if<Declaration>(&axiom)) {
    if (declared_.count(d->id))
      throw OwlError(ErrorCode::DuplicateEntity, d->id.curie() + " is already declared");
    declared_.emplace(d->id, d->kind);
  }
  axioms_.push_back(std::move(axiom));
  return *this;
}

std::vector<Declaration> Ontology::declarations() const {
  std::vector<Declaration> out;
  for (const auto& ax : axioms_) {
    if (const auto* d = std::get_if<Declaration>(&ax)) out.push_back(*d);
  }
  return out;
}

void OntologyRegistry::add(std::shared_ptr<const Ontology> ontology) {
  const std::string iri = ontology->iri();
  by_iri_[iri] = std::move(ontology);
}

const Ontology* OntologyRegistry::find(std::string_view iri) const {
  auto it = by_iri_.find(iri);
  return it == by_iri_.end() ? nullptr : it->second.get();
}

// --- referential closure -----------------------------------------------------

namespace {

struct Reference {
  EntityId id;
  EntityKind kind;
};

void collect(const ClassExpression& expr, std::vector<Reference>& out) {
  if (const auto* n = expr.as<Named>()) {
    out.push_back({n->id, EntityKind::Class});
  } else if (const auto* a = expr.as<And>()) {
    for (const auto& op : a->operands) collect(op, out);
  } else if (const auto* o = expr.as<Or>()) {
    for (const auto& op : o->operands) collect(op, out);
  } else if (const auto* s = expr.as<Some>()) {
    out.push_back({s->property, EntityKind::ObjectProperty});
    collect(*s->filler, out);
  } else if (const auto* e = expr.as<Exactly>()) {
    out.push_back({e->property, EntityKind::ObjectProperty});
    collect(*e->filler, out);
  }
}

// Full IRI -> declared kind, over `o` and everything it imports.
std::map<std::string, EntityKind> visible_declarations(const Ontology& o,
                                                       const OntologyRegistry& registry) {
  std::map<std::string, EntityKind> out;
  std::set<std::string> seen;
  std::vector<const Ontology*> pending{&o};
  while (!pending.empty()) {
    const Ontology* cur = pending.back();
    pending.pop_back();
    if (!seen.insert(cur->iri()).second) continue;
    for (const auto& ax : cur->axioms()) {
      if (const auto* d = std::get_if<Declaration>(&ax)) {
        if (auto iri = cur->expand(d->id)) out.emplace(*iri, d->kind);
      } else if (const auto* imp = std::get_if<Import>(&ax)) {
        if (const Ontology* next = registry.find(imp->iri)) pending.push_back(next);
      }
    }
  }
  return out;
}

std::string_view kind_name(EntityKind kind) {
  return kind == EntityKind::Class ? "class" : "object property";
}

}  // namespace

void check_references(const Ontology& o, const OntologyRegistry& registry) {
  const auto visible = visible_declarations(o, registry);
  auto require = [&](const EntityId& id, std::optional<EntityKind> kind) {
    const auto iri = o.expand(id);
    if (!iri) throw OwlError(ErrorCode::UnresolvedReference, "unknown prefix in " + id.curie());
    auto it = visible.find(*iri);
    if (it == visible.end())
      throw OwlError(ErrorCode::UnresolvedReference, id.curie() + " is not declared");
    if (kind && it->second != *kind)
      throw OwlError(ErrorCode::UnresolvedReference,
                     id.curie() + " is not declared as an " + std::string(kind_name(*kind)));
  };

  for (const auto& ax : o.axioms()) {
    std::vector<Reference> refs;
    std::visit(
        [&](const auto& a) {
          using T = std::decay_t<decltype(a)>;
          if constexpr (std::is_same_v<T, Declaration>) {
            if (!o.expand(a.id))
              throw OwlError(ErrorCode::UnresolvedReference, "unknown prefix in " + a.id.curie());
          } else if constexpr (std::is_same_v<T, SubClassOf>) {
            refs.push_back({a.sub, EntityKind::Class});
            collect(a.super, refs);
          } else if constexpr (std::is_same_v<T, EquivalentTo>) {
            refs.push_back({a.cls, EntityKind::Class});
            collect(a.expr, refs);
          } else if constexpr (std::is_same_v<T, DisjointClasses>) {
            for (const auto& m : a.members) refs.push_back({m, EntityKind::Class});
          } else if constexpr (std::is_same_v<T, Annotation>) {
            require(a.subject, std::nullopt);
          } else if constexpr (std::is_same_v<T, TransitiveProperty>) {
            refs.push_back({a.id, EntityKind::ObjectProperty});
          }
        },
        ax);
    for (const auto& r : refs) require(r.id, r.kind);
  }
}

// --- Manchester writer -------------------------------------------------------

namespace {

constexpr std::string_view kSection = "    ";
constexpr std::string_view kItem = "        ";

std::string quoted(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::string_view annotation_name(AnnotationProperty p) {
  return p == AnnotationProperty::Label ? "rdfs:label" : "rdfs:comment";
}

void write_section(std::ostream& os, std::string_view title, const std::vector<std::string>& items) {
  if (items.empty()) return;
  os << '\n' << kSection << title << ":\n";
  for (std::size_t i = 0; i < items.size(); ++i) {
    os << kItem << items[i] << (i + 1 < items.size() ? ",\n" : "\n");
  }
}

void write_frame(std::ostream& os, const Ontology& o, const EntityId& id, EntityKind kind) {
  std::vector<std::string> annotations, characteristics, supers, equivalents;
  for (const auto& ax : o.axioms()) {
    if (const auto* a = std::get_if<Annotation>(&ax); a && a->subject == id) {
      annotations.push_back(std::string(annotation_name(a->property)) + " " + quoted(a->value));
    } else if (const auto* t = std::get_if<TransitiveProperty>(&ax); t && t->id == id) {
      characteristics.emplace_back("Transitive");
    } else if (const auto* s = std::get_if<SubClassOf>(&ax); s && s->sub == id) {
      supers.push_back(render(s->super));
    } else if (const auto* e = std::get_if<EquivalentTo>(&ax); e && e->cls == id) {
      equivalents.push_back(render(e->expr));
    }
  }
  os << (kind == EntityKind::Class ? "Class: " : "ObjectProperty: ") << id.curie() << '\n';
  write_section(os, "Annotations", annotations);
  write_section(os, "Characteristics", characteristics);
  write_section(os, "SubClassOf", supers);
  write_section(os, "EquivalentTo", equivalents);
}

// Entities that get a frame: local declarations first, then subjects of
// axioms whose declaration lives in an imported ontology.
std::vector<Declaration> frame_subjects(const Ontology& o, const OntologyRegistry& registry) {
  std::vector<Declaration> out = o.declarations();
  std::set<EntityId> listed;
  for (const auto& d : out) listed.insert(d.id);
  std::map<std::string, EntityKind> visible;
  bool visible_ready = false;
  auto add = [&](const EntityId& id) {
    if (!listed.insert(id).second) return;
    if (!visible_ready) {
      visible = visible_declarations(o, registry);
      visible_ready = true;
    }
    EntityKind kind = EntityKind::Class;
    if (auto iri = o.expand(id)) {
      if (auto it = visible.find(*iri); it != visible.end()) kind = it->second;
    }
    out.push_back({kind, id});
  };
  for (const auto& ax : o.axioms()) {
    if (const auto* a = std::get_if<Annotation>(&ax)) add(a->subject);
    else if (const auto* t = std::get_if<TransitiveProperty>(&ax)) add(t->id);
    else if (const auto* s = std::get_if<SubClassOf>(&ax)) add(s->sub);
    else if (const auto* e = std::get_if<EquivalentTo>(&ax)) add(e->cls);
  }
  return out;
}

}  // namespace

std::string emit_manchester(const Ontology& o, const OntologyRegistry& registry) {
  check_references(o, registry);
  std::ostringstream os;
  for (const auto& [label, iri] : o.prefixes()) {
    os << "Prefix: " << label << ": <" << iri << ">\n";
  }
  if (!o.prefixes().empty()) os << '\n';

  os << "Ontology: <" << o.iri() << ">\n";
  bool first_import = true;
  for (const auto& ax : o.axioms()) {
    if (const auto* imp = std::get_if<Import>(&ax)) {
      if (first_import) os << '\n';
      first_import = false;
      os << kSection << "Import: <" << imp->iri << ">\n";
    }
  }
  if (!o.comment().empty()) {
    write_section(os, "Annotations", {"rdfs:comment " + quoted(o.comment())});
  }

  for (const auto& d : frame_subjects(o, registry)) {
    os << '\n';
    write_frame(os, o, d.id, d.kind);
  }

  for (const auto& ax : o.axioms()) {
    const auto* dj = std::get_if<DisjointClasses>(&ax);
    if (!dj) continue;
    os << "\nDisjointClasses:\n";
    for (std::size_t i = 0; i < dj->members.size(); ++i) {
      os << kSection << dj->members[i].curie() << (i + 1 < dj->members.size() ? ",\n" : "\n");
    }
  }
  return os.str();
}

std::string emit_frame(const Ontology& o, const EntityId& id, const OntologyRegistry& registry) {
  check_references(o, registry);
  for (const auto& d : frame_subjects(o, registry)) {
    if (d.id != id) continue;
    std::ostringstream os;
    write_frame(os, o, d.id, d.kind);
    return os.str();
  }
  throw OwlError(ErrorCode::UnresolvedReference, id.curie() + " has no frame in " + o.iri());
}

}  // namespace litonto::owl
