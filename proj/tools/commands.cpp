#include "commands.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "litonto/iscn.hpp"
#include "litonto/karyotype.hpp"
#include "litonto/owl.hpp"

namespace litonto::cli {

using json = nlohmann::ordered_json;

namespace {

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return ss.str();
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return false;
  out << text;
  out.flush();
  return static_cast<bool>(out);
}

void print_json(std::ostream& os, const json& j) { os << j.dump(2) << '\n'; }

json diagnostic_json(const lentic::Diagnostic& d) {
  return {{"line", d.line_number},
          {"severity", lentic::to_string(d.severity)},
          {"code", lentic::to_string(d.code)},
          {"message", d.message}};
}

json diagnostics_json(const std::vector<lentic::Diagnostic>& ds) {
  json arr = json::array();
  for (const auto& d : ds) arr.push_back(diagnostic_json(d));
  return arr;
}

void print_diagnostics(std::ostream& err, const std::vector<lentic::Diagnostic>& ds) {
  for (const auto& d : ds) err << lentic::format(d) << '\n';
}

int io_failure(const CliConfig& cfg, Streams io, const std::string& what) {
  if (cfg.json()) print_json(io.out, {{"ok", false}, {"error", {{"code", "IoError"}, {"message", what}}}});
  else io.err << "litonto: " << what << '\n';
  return kIoError;
}

lentic::ViewKind other(lentic::ViewKind v) {
  return v == lentic::ViewKind::CodeCentric ? lentic::ViewKind::DocumentCentric
                                            : lentic::ViewKind::CodeCentric;
}

json event_json(const iscn::IscnEvent& e) {
  json j = {{"kind", iscn::to_string(e.kind)}, {"constitutional", e.constitutional}};
  if (e.is_numerical()) {
    j["target"] = e.target->to_string();
    return j;
  }
  const auto& s = *e.structural;
  j["type"] = iscn::symbol(s.type);
  json chroms = json::array(), bands = json::array();
  for (const auto& c : s.chromosomes) chroms.push_back(c.to_string());
  for (const auto& b : s.bands) bands.push_back(b.to_string());
  j["chromosomes"] = chroms;
  j["bands"] = bands;
  return j;
}

json karyotype_json(const iscn::IscnKaryotype& k) {
  json sex = json::array();
  for (auto s : k.sex_field) sex.push_back(std::string(1, iscn::to_char(s)));
  json events = json::array();
  for (const auto& e : k.events) events.push_back(event_json(e));
  return {{"raw", k.raw},
          {"declared_count", k.declared_count},
          {"sex_field", sex},
          {"sex_constitutional", k.sex_constitutional},
          {"events", events}};
}

int domain_error(const CliConfig& cfg, Streams io, std::string_view code, std::size_t position,
                 const std::string& message) {
  if (cfg.json()) {
    json err = {{"code", code}, {"message", message}};
    err["position"] = position ? json(position) : json(nullptr);
    print_json(io.out, {{"ok", false}, {"error", err}});
  } else {
    io.err << "litonto: " << message << '\n';
  }
  return kDomainError;
}

}  // namespace

int cmd_view(lentic::ViewKind target, const std::string& input_path,
             const std::optional<std::string>& output_path, const CliConfig& cfg, Streams io) {
  const auto text = read_file(input_path);
  if (!text) return io_failure(cfg, io, "cannot read " + input_path);

  const auto decoded = lentic::decode(*text, other(target));
  auto diagnostics = decoded.diagnostics;
  const auto found = lentic::validate(decoded.source, cfg.literate(), cfg.strictness());
  diagnostics.insert(diagnostics.end(), found.begin(), found.end());

  if (lentic::has_errors(diagnostics)) {
    if (cfg.json()) print_json(io.out, {{"ok", false}, {"diagnostics", diagnostics_json(diagnostics)}});
    else print_diagnostics(io.err, diagnostics);
    return kDomainError;
  }
  const std::string result =
      lentic::encode(lentic::propagate(decoded.source, cfg.literate(), cfg.strictness()));

  if (output_path && !write_file(*output_path, result))
    return io_failure(cfg, io, "cannot write " + *output_path);

  if (cfg.json()) {
    json j = {{"ok", true}, {"view", lentic::to_string(target)}, {"diagnostics", diagnostics_json(diagnostics)}};
    if (output_path) j["output"] = *output_path;
    else j["text"] = result;
    print_json(io.out, j);
  } else {
    print_diagnostics(io.err, diagnostics);
    if (!output_path) io.out << result;
  }
  return kOk;
}

int cmd_check(const std::string& input_path, lentic::ViewKind view, const CliConfig& cfg,
              Streams io) {
  const auto text = read_file(input_path);
  if (!text) return io_failure(cfg, io, "cannot read " + input_path);

  const auto literate = cfg.literate();
  const auto decoded = lentic::decode(*text, view);
  auto diagnostics = decoded.diagnostics;
  const auto found = lentic::validate(decoded.source, literate, cfg.strictness());
  diagnostics.insert(diagnostics.end(), found.begin(), found.end());

  std::optional<std::string> mismatch;
  if (!lentic::has_errors(diagnostics)) {
    try {
      const auto counterpart = lentic::propagate(decoded.source, literate, cfg.strictness());
      const auto back = lentic::propagate(counterpart, literate, cfg.strictness());
      const auto& a = decoded.source.lines;
      const auto& b = back.lines;
      for (std::size_t i = 0; i < std::max(a.size(), b.size()) && !mismatch; ++i) {
        if (i >= a.size() || i >= b.size() || a[i] != b[i]) {
          mismatch = "round trip through the " + std::string(lentic::to_string(other(view))) +
                     " view changes line " + std::to_string(i + 1) + ": \"" +
                     (i < a.size() ? a[i] : "") + "\" became \"" + (i < b.size() ? b[i] : "") + "\"";
        }
      }
    } catch (const lentic::ValidationFailed& e) {
      mismatch = "counterpart view does not validate: " + std::string(e.what());
    }
  }

  const bool ok = !lentic::has_errors(diagnostics) && !mismatch;
  if (cfg.json()) {
    json j = {{"ok", ok}, {"file", input_path}, {"view", lentic::to_string(view)},
              {"lines", decoded.source.lines.size()}, {"diagnostics", diagnostics_json(diagnostics)}};
    j["round_trip"] = mismatch ? json(*mismatch) : json("exact");
    print_json(io.out, j);
  } else {
    print_diagnostics(io.err, diagnostics);
    if (mismatch) io.err << input_path << ": " << *mismatch << '\n';
    if (ok) io.out << input_path << ": ok (" << decoded.source.lines.size() << " lines, "
                   << lentic::to_string(view) << " view)\n";
  }
  return ok ? kOk : kDomainError;
}

int cmd_iscn(IscnAction action, const std::string& text, const CliConfig& cfg, Streams io) {
  try {
    const auto k = iscn::parse_checked(text, {cfg.allow_n});
    if (action == IscnAction::Parse) {
      print_json(io.out, karyotype_json(k));
      return kOk;
    }

    const auto def = karyotype::compile_karyotype(k);
    if (action == IscnAction::Classify) {
      const auto sex = karyotype::classify_sex(def);
      if (cfg.json()) print_json(io.out, {{"iscn", k.raw}, {"class", def.id.curie()}, {"sex", karyotype::to_string(sex)}});
      else io.out << karyotype::to_string(sex) << '\n';
      return kOk;
    }

    owl::Ontology o = karyotype::example_ontology_skeleton();
    karyotype::add_definition(o, def, karyotype::label_for(k));
    const std::string frame = owl::emit_frame(o, def.id, karyotype::vocabulary().registry);
    if (cfg.json()) print_json(io.out, {{"iscn", k.raw}, {"class", def.id.curie()}, {"manchester", frame}});
    else io.out << frame;
    return kOk;
  } catch (const iscn::IscnError& e) {
    return domain_error(cfg, io, iscn::to_string(e.code()), e.position(), e.what());
  } catch (const karyotype::KaryotypeError& e) {
    return domain_error(cfg, io, karyotype::to_string(e.code()), e.position(), e.what());
  }
}

int cmd_examples(const std::optional<std::string>& output_path, const CliConfig& cfg, Streams io) {
  const std::string text = owl::emit_manchester(karyotype::build_example_ontology(),
                                                karyotype::vocabulary().registry);
  if (output_path) {
    if (!write_file(*output_path, text)) return io_failure(cfg, io, "cannot write " + *output_path);
    if (cfg.json()) print_json(io.out, {{"ok", true}, {"output", *output_path}});
    return kOk;
  }
  if (cfg.json()) print_json(io.out, {{"ok", true}, {"manchester", text}});
  else io.out << text;
  return kOk;
}

int run(int argc, const char* const* argv, Streams io, const char* config_env) {
  CLI::App app{"litonto: lenticular literate sources and ISCN karyotype ontologies"};
  app.require_subcommand(1, 1);

  CliOverrides flags;
  std::string prefix, begin, end;
  auto* prefix_opt = app.add_option("--prefix", prefix, "Comment prefix of the code-centric view (default \";; \")");
  auto* begin_opt = app.add_option("--begin", begin, "Begin fence marker (default \\begin{code})");
  auto* end_opt = app.add_option("--end", end, "End fence marker (default \\end{code})");
  auto* strict_flag = app.add_flag("--strict", "Unprefixed documentation lines are errors (default)");
  auto* lenient_flag = app.add_flag("--lenient", "Unprefixed documentation lines are warnings")->excludes(strict_flag);
  auto* allow_n_flag = app.add_flag("--allow-n", "Accept N in ISCN sex fields");
  auto* json_flag = app.add_flag("--json", "Machine-readable output");
  std::optional<std::string> output;
  app.add_option("-o,--output", output, "Output file (default: standard output)");

  std::string direction, input, view_name, action, iscn_text;
  auto* view = app.add_subcommand("view", "Transform a file into the doc or code view");
  view->add_option("direction", direction, "View to produce")->required()->check(CLI::IsMember({"doc", "code"}));
  view->add_option("input", input, "Input file")->required();
  auto* check = app.add_subcommand("check", "Validate a file and round-trip it through the other view");
  check->add_option("input", input, "Input file")->required();
  check->add_option("--view", view_name, "View the input is written in")->required()->check(CLI::IsMember({"doc", "code"}));
  auto* iscn_cmd = app.add_subcommand("iscn", "Parse, build or classify an ISCN karyotype string");
  iscn_cmd->add_option("action", action, "parse | build | classify")->required()->check(CLI::IsMember({"parse", "build", "classify"}));
  iscn_cmd->add_option("karyotype", iscn_text, "ISCN string, e.g. 45,X,-Y")->required();
  auto* examples = app.add_subcommand("examples", "Write the ISCN example ontology (.omn)");
  for (auto* sub : {view, check, iscn_cmd, examples}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    io.out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    io.err << "litonto: " << e.what() << '\n' << "Run with --help for usage.\n";
    return kDomainError;
  }

  if (*prefix_opt) flags.comment_prefix = prefix;
  if (*begin_opt) flags.begin_marker = begin;
  if (*end_opt) flags.end_marker = end;
  if (*strict_flag) flags.strict = true;
  if (*lenient_flag) flags.strict = false;
  if (*allow_n_flag) flags.allow_n = true;
  if (*json_flag) flags.json = true;

  std::optional<std::string> config_text;
  if (config_env && *config_env) {
    config_text = read_file(config_env);
    if (!config_text) {
      io.err << "litonto: cannot read config file " << config_env << '\n';
      return kIoError;
    }
  }
  CliConfig cfg;
  try {
    cfg = resolve(flags, config_text);
  } catch (const ConfigError& e) {
    io.err << "litonto: " << e.what() << '\n';
    return kDomainError;
  }

  auto kind = [](const std::string& name) {
    return name == "code" ? lentic::ViewKind::CodeCentric : lentic::ViewKind::DocumentCentric;
  };
  if (*view) return cmd_view(kind(direction), input, output, cfg, io);
  if (*check) return cmd_check(input, kind(view_name), cfg, io);
  if (*iscn_cmd) {
    const IscnAction a = action == "parse"   ? IscnAction::Parse
                         : action == "build" ? IscnAction::Build
                                             : IscnAction::Classify;
    return cmd_iscn(a, iscn_text, cfg, io);
  }
  return cmd_examples(output, cfg, io);
}

}  // namespace litonto::cli
