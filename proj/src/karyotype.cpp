#include "litonto/karyotype.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace litonto::karyotype {

namespace {

std::string ontology_iri(std::string_view name) { return std::string(kOntologyRoot) + std::string(name); }
std::string prefix_iri(std::string_view name) { return ontology_iri(name) + "#"; }

EntityId k_(std::string local) { return {"k", std::move(local)}; }
EntityId h_(std::string local) { return {"h", std::move(local)}; }
EntityId e_(std::string local) { return {"e", std::move(local)}; }
EntityId b_(std::string local) { return {"b", std::move(local)}; }
EntityId iexs_(std::string local) { return {"iexs", std::move(local)}; }

KaryotypeVocabulary make_vocabulary() {
  KaryotypeVocabulary v;
  v.karyotype = k_("Karyotype");
  v.human_chromosome = h_("HumanChromosome");
  v.human_autosome = h_("HumanAutosome");
  v.human_sex_chromosome = h_("HumanSexChromosome");
  for (const auto& c : iscn::ChromosomeId::all()) {
    if (c.is_x()) v.chromosome_x = chromosome_class(c);
    else if (c.is_y()) v.chromosome_y = chromosome_class(c);
    else v.autosomes.push_back(chromosome_class(c));
  }
  v.event = e_("Event");
  v.deletion = e_("Deletion");
  v.addition = e_("Addition");
  v.has_direct_event = e_("hasDirectEvent");
  v.k46_xx = b_("k46_XX");
  v.k46_xy = b_("k46_XY");
  v.k46_xn = b_("k46_XN");
  v.derived_from = b_("derivedFrom");
  v.example_karyotype = iexs_("ISCNExampleKaryotype_subset");
  v.male_karyotype = iexs_("MaleKaryotype");
  v.female_karyotype = iexs_("FemaleKaryotype");

  auto karyotype = std::make_shared<owl::Ontology>(ontology_iri("karyotype"));
  karyotype->add_prefix("k", prefix_iri("karyotype"));
  karyotype->define_class(v.karyotype, "Karyotype", std::nullopt, {});

  auto human = std::make_shared<owl::Ontology>(ontology_iri("human"));
  human->add_prefix("h", prefix_iri("human"));
  human->define_class(v.human_chromosome, "Human chromosome", std::nullopt, {});
  human->define_class(v.human_autosome, "Human autosome", std::nullopt, {v.human_chromosome});
  human->define_class(v.human_sex_chromosome, "Human sex chromosome", std::nullopt,
                      {v.human_chromosome});
  for (const auto& c : iscn::ChromosomeId::all()) {
    human->define_class(chromosome_class(c), "Human chromosome " + c.to_string(), std::nullopt,
                        {c.is_sex() ? v.human_sex_chromosome : v.human_autosome});
  }

  auto events = std::make_shared<owl::Ontology>(ontology_iri("events"));
  events->add_prefix("e", prefix_iri("events"));
  events->define_class(v.event, "Event", std::nullopt, {});
  events->define_class(v.deletion, "Deletion", std::nullopt, {v.event});
  events->define_class(v.addition, "Addition", std::nullopt, {v.event});
  events->declare_property(v.has_direct_event);

  auto base = std::make_shared<owl::Ontology>(ontology_iri("base"));
  base->add_prefix("b", prefix_iri("base")).add_prefix("k", prefix_iri("karyotype"));
  base->add_import(karyotype->iri());
  base->declare_property(v.derived_from, /*transitive=*/true);
  for (const auto* id : {&v.k46_xx, &v.k46_xy, &v.k46_xn}) {
    base->define_class(*id, "The " + id->local.substr(1, 2) + "," + id->local.substr(4) + " karyotype",
                       std::nullopt, {v.karyotype});
  }

  v.karyotype_ontology = karyotype;
  v.human = human;
  v.events = events;
  v.base = base;
  for (const auto& o : {v.karyotype_ontology, v.human, v.events, v.base}) v.registry.add(o);
  return v;
}

// Numerical events of one kind on one chromosome, merged into one restriction.
struct EventGroup {
  iscn::EventKind kind;
  iscn::ChromosomeId chromosome;
  bool constitutional;
  std::uint32_t count;
};

std::vector<EventGroup> group_events(const iscn::IscnKaryotype& k) {
  std::vector<EventGroup> out;
  for (const auto& e : k.events) {
    auto it = std::find_if(out.begin(), out.end(), [&](const EventGroup& g) {
      return g.kind == e.kind && g.chromosome == *e.target && g.constitutional == e.constitutional;
    });
    if (it != out.end()) ++it->count;
    else out.push_back({e.kind, *e.target, e.constitutional, 1});
  }
  return out;
}

ClassExpression pattern_for(const EventGroup& g) {
  const EntityId chrom = chromosome_class(g.chromosome);
  return g.kind == iscn::EventKind::NumericalGain ? addition_pattern(g.count, chrom)
                                                  : deletion_pattern(g.count, chrom);
}

void collect_bases(const ClassExpression& expr, bool under_derivation, const EntityId& derived_from,
                   std::set<EntityId>& out) {
  if (const auto* n = expr.as<owl::Named>()) {
    if (under_derivation) out.insert(n->id);
  } else if (const auto* a = expr.as<owl::And>()) {
    for (const auto& op : a->operands) collect_bases(op, under_derivation, derived_from, out);
  } else if (const auto* s = expr.as<owl::Some>()) {
    if (s->property == derived_from) collect_bases(*s->filler, true, derived_from, out);
  }
}

SexClass verdict(const std::set<EntityId>& reached) {
  const auto& v = vocabulary();
  const bool male = reached.count(v.k46_xy) != 0;
  const bool female = reached.count(v.k46_xx) != 0;
  if (male && female)
    throw KaryotypeError(ErrorCode::ConflictingBases, "derived from both 46,XX and 46,XY");
  if (male) return SexClass::Male;
  if (female) return SexClass::Female;
  return SexClass::Unknown;
}

}  // namespace

const EntityId& KaryotypeVocabulary::chromosome(iscn::ChromosomeId id) const {
  if (id.is_x()) return chromosome_x;
  if (id.is_y()) return chromosome_y;
  return autosomes.at(static_cast<std::size_t>(id.autosome_number() - 1));
}

const KaryotypeVocabulary& vocabulary() {
  static const KaryotypeVocabulary v = make_vocabulary();
  return v;
}

EntityId chromosome_class(iscn::ChromosomeId id) { return h_("HumanChromosome" + id.to_string()); }

ClassExpression deletion_pattern(std::uint32_t n, const EntityId& chrom) {
  const auto& v = vocabulary();
  return owl::exactly(n, v.has_direct_event, owl::all_of({v.deletion, chrom}));
}

ClassExpression addition_pattern(std::uint32_t n, const EntityId& chrom) {
  const auto& v = vocabulary();
  return owl::exactly(n, v.has_direct_event, owl::all_of({v.addition, chrom}));
}

std::vector<ClassExpression> KaryotypeDefinition::supers() const {
  std::vector<ClassExpression> out{vocabulary().example_karyotype, base};
  out.insert(out.end(), acquired_events.begin(), acquired_events.end());
  return out;
}

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnsupportedStructuralEvent: return "UnsupportedStructuralEvent";
    case ErrorCode::CountMismatch: return "CountMismatch";
    case ErrorCode::ConflictingBases: return "ConflictingBases";
  }
  return "?";
}

KaryotypeError::KaryotypeError(ErrorCode code, std::string detail, std::size_t position)
    : std::runtime_error(std::string(to_string(code)) +
                         (position ? " at column " + std::to_string(position) : std::string()) +
                         ": " + detail),
      code_(code),
      position_(position) {}

EntityId class_id_for(const iscn::IscnKaryotype& k) {
  std::string local = "k" + iscn::to_string(k);
  std::replace(local.begin(), local.end(), ',', '_');
  return iexs_(std::move(local));
}

KaryotypeDefinition compile_karyotype(const iscn::IscnKaryotype& k) {
  const auto& v = vocabulary();
  if (!iscn::validate_count(k)) {
    throw KaryotypeError(ErrorCode::CountMismatch,
                         "declared count " + std::to_string(k.declared_count) + " but events imply " +
                             std::to_string(iscn::expected_count(k)),
                         1);
  }
  for (std::size_t i = 0; i < k.events.size(); ++i) {
    const auto& e = k.events[i];
    if (!e.is_numerical()) {
      throw KaryotypeError(ErrorCode::UnsupportedStructuralEvent,
                           "rearrangement '" + std::string(iscn::symbol(e.structural->type)) +
                               "' has no ontological model",
                           iscn::event_column(k, i));
    }
  }
  const iscn::BaseComplement complement = iscn::infer_base_complement(k);

  std::vector<ClassExpression> constitutional, acquired;
  for (const auto& g : group_events(k)) {
    (g.constitutional ? constitutional : acquired).push_back(pattern_for(g));
  }

  ClassExpression base = v.k46_xn;
  if (complement.needs_generic_base) {
    // derivedFrom some (derivedFrom some 46,XN and <sex adjustment> and <constitutional>)
    std::vector<ClassExpression> parts{owl::some(v.derived_from, v.k46_xn)};
    const auto letters = static_cast<long>(complement.sex_letters.size());
    if (letters < 2) parts.push_back(deletion_pattern(static_cast<std::uint32_t>(2 - letters), v.human_sex_chromosome));
    if (letters > 2) parts.push_back(addition_pattern(static_cast<std::uint32_t>(letters - 2), v.human_sex_chromosome));
    parts.insert(parts.end(), constitutional.begin(), constitutional.end());
    base = parts.size() == 1 ? owl::some(v.derived_from, v.k46_xn)
                             : owl::some(v.derived_from, owl::all_of(std::move(parts)));
  } else {
    const bool male = std::count(complement.sex_letters.begin(), complement.sex_letters.end(),
                                 iscn::SexSymbol::Y) == 1;
    base = owl::some(v.derived_from, male ? v.k46_xy : v.k46_xx);
    if (!constitutional.empty()) {
      std::vector<ClassExpression> parts{base};
      parts.insert(parts.end(), constitutional.begin(), constitutional.end());
      base = owl::some(v.derived_from, owl::all_of(std::move(parts)));
    }
  }
  return {class_id_for(k), std::move(base), std::move(acquired)};
}

std::set<EntityId> derivation_bases(const ClassExpression& expr) {
  std::set<EntityId> out;
  collect_bases(expr, false, vocabulary().derived_from, out);
  return out;
}

std::string_view to_string(SexClass sex) {
  switch (sex) {
    case SexClass::Male: return "male";
    case SexClass::Female: return "female";
    case SexClass::Unknown: return "unknown";
  }
  return "?";
}

SexClass classify_sex(const KaryotypeDefinition& d) {
  std::set<EntityId> reached = derivation_bases(d.base);
  for (const auto& e : d.acquired_events) {
    const auto more = derivation_bases(e);
    reached.insert(more.begin(), more.end());
  }
  reached.insert(d.id);
  return verdict(reached);
}

SexClass classify_sex(const owl::Ontology& o, const EntityId& cls) {
  std::map<EntityId, std::vector<const ClassExpression*>> supers;
  for (const auto& ax : o.axioms()) {
    if (const auto* s = std::get_if<owl::SubClassOf>(&ax)) supers[s->sub].push_back(&s->super);
    else if (const auto* e = std::get_if<owl::EquivalentTo>(&ax)) supers[e->cls].push_back(&e->expr);
  }
  auto supers_of = [&](const EntityId& id) {
    auto it = supers.find(id);
    return it == supers.end() ? std::vector<const ClassExpression*>{} : it->second;
  };

  // Named classes `cls` is a subclass of (itself included).
  std::set<EntityId> identities{cls};
  std::vector<EntityId> pending{cls};
  while (!pending.empty()) {
    const EntityId cur = pending.back();
    pending.pop_back();
    for (const auto* expr : supers_of(cur)) {
      if (const auto* n = expr->as<owl::Named>(); n && identities.insert(n->id).second)
        pending.push_back(n->id);
    }
  }

  // Classes `cls` is derived from; derivedFrom is transitive, and anything a
  // derivation target is a subclass of is also a derivation target.
  std::set<EntityId> derived;
  auto expand = [&](const EntityId& from) {
    for (const auto* expr : supers_of(from)) {
      for (const auto& b : derivation_bases(*expr)) {
        if (derived.insert(b).second) pending.push_back(b);
      }
    }
  };
  for (const auto& id : identities) expand(id);
  while (!pending.empty()) {
    const EntityId cur = pending.back();
    pending.pop_back();
    expand(cur);
    for (const auto* expr : supers_of(cur)) {
      if (const auto* n = expr->as<owl::Named>(); n && derived.insert(n->id).second)
        pending.push_back(n->id);
    }
  }

  std::set<EntityId> reached = identities;
  reached.insert(derived.begin(), derived.end());
  return verdict(reached);
}

std::string label_for(const iscn::IscnKaryotype& k) {
  return "The " + iscn::to_string(k) + " karyotype";
}

void add_definition(owl::Ontology& o, const KaryotypeDefinition& d, const std::string& label,
                    const std::string& comment) {
  o.define_class(d.id, label, comment.empty() ? std::nullopt : std::optional<std::string>(comment),
                 d.supers());
}

owl::Ontology example_ontology_skeleton() {
  const auto& v = vocabulary();
  owl::Ontology o(ontology_iri("iscnexamples_subset"),
                  "Subset of the ISCN Example Karyotypes ontology for Human Karyotype Ontology, "
                  "written using the Tanwy_OWL library.");
  o.add_prefix("iexs", prefix_iri("iscnexamples_subset"))
      .add_prefix("k", prefix_iri("karyotype"))
      .add_prefix("h", prefix_iri("human"))
      .add_prefix("e", prefix_iri("events"))
      .add_prefix("b", prefix_iri("base"));
  o.add_import(v.karyotype_ontology->iri());
  o.define_class(v.example_karyotype, std::nullopt, std::nullopt, {v.karyotype});
  o.add_import(v.base->iri());
  o.add_import(v.events->iri());
  o.add_import(v.human->iri());
  return o;
}

owl::Ontology build_example_ontology() {
  struct Example {
    std::string_view iscn;
    std::string_view comment;
  };
  static constexpr Example kExamples[] = {
      {"45,XX,-22", "A karyotype with monosomy 22."},
      {"45,X,-X", "A tumor karyotype in a female with loss of one X chromosome."},
      {"46,XY,+21c,-21", "Acquired loss of one chromosome 21 in a patient with Down syndrome."},
      {"45,X", "A karyotype with one X chromosome (Turner syndrome)."},
      {"46,Xc,+21",
       "Tumor cells with an acquired extra chromosome 21 in a patient with Turner syndrome."},
  };

  const auto& v = vocabulary();
  owl::Ontology o = example_ontology_skeleton();
  std::vector<EntityId> members;
  for (const auto& ex : kExamples) {
    const iscn::IscnKaryotype k = iscn::parse_checked(ex.iscn);
    const KaryotypeDefinition d = compile_karyotype(k);
    add_definition(o, d, label_for(k), std::string(ex.comment));
    members.push_back(d.id);
  }
  o.as_disjoint(std::move(members));
  o.define_class(v.male_karyotype, std::nullopt, std::nullopt, {},
                 {owl::any_of({v.k46_xy, owl::some(v.derived_from, v.k46_xy)})});
  o.define_class(v.female_karyotype, std::nullopt, std::nullopt, {},
                 {owl::any_of({v.k46_xx, owl::some(v.derived_from, v.k46_xx)})});
  owl::check_references(o, v.registry);
  return o;
}

}  // namespace litonto::karyotype
