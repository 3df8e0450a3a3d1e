#include "ialg/session.hpp"

#include <cstdio>
#include <sstream>

#include "ialg/errors.hpp"
#include "ialg/qgr.hpp"

#ifndef IALG_VERSION
#define IALG_VERSION "0.0.0"
#endif

namespace ialg {

const char* engine_version() { return IALG_VERSION; }

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string to_string(Status s) {
  switch (s) {
    case Status::Computed: return "computed";
    case Status::Verified: return "verified";
    case Status::Refuted: return "refuted";
    case Status::Inconclusive: return "inconclusive";
    case Status::ResourceLimit: return "resource-limit";
    case Status::Error: return "error";
  }
  return "error";
}

int exit_code(Status s) {
  switch (s) {
    case Status::Computed:
    case Status::Verified: return 0;
    case Status::Refuted: return 2;
    case Status::Inconclusive: return 3;
    case Status::ResourceLimit: return 4;
    case Status::Error: return 1;
  }
  return 1;
}

namespace {

int severity(Status s) {
  switch (s) {
    case Status::Computed: return 0;
    case Status::Verified: return 1;
    case Status::Inconclusive: return 2;
    case Status::Refuted: return 3;
    case Status::ResourceLimit: return 4;
    case Status::Error: return 5;
  }
  return 5;
}

Status status_of(Verdict v) {
  switch (v) {
    case Verdict::Verified:
    case Verdict::VerifiedByCriterion: return Status::Verified;
    case Verdict::Refuted: return Status::Refuted;
    case Verdict::Inconclusive: return Status::Inconclusive;
  }
  return Status::Inconclusive;
}

Vec combination_vec(const PresentedAlgebra& a, const Index& i, const Index& j, const Combination& comb) {
  const Field& f = a.field();
  Vec out;
  for (const auto& t : comb) {
    Word w;
    for (const auto& g : t.word) w.push_back(*a.generator_id(g));
    Vec v = w.empty() ? (i == j ? unit_vec(0) : Vec{}) : a.normal_form(i, j, w);
    axpy(f, out, f.from_rational(t.coeff), v);
  }
  return out;
}

nlohmann::json dims_table(const Poset& poset, const Window& w, const std::function<std::size_t(const Index&)>& dim) {
  nlohmann::json out;
  auto entries = nlohmann::json::array();
  for (const auto& j : w.elements()) entries.push_back({poset.format(j), dim(j)});
  out["dims"] = entries;
  if (w.is_box() && poset.is_lattice() && poset.arity() == 2) {
    auto table = nlohmann::json::array();
    for (std::int64_t a = w.lo()[0]; a <= w.hi()[0]; ++a) {
      auto row = nlohmann::json::array();
      for (std::int64_t b = w.lo()[1]; b <= w.hi()[1]; ++b) row.push_back(dim(Index{a, b}));
      table.push_back(row);
    }
    out["table"] = table;
  }
  return out;
}

std::string join(const std::vector<std::string>& args) {
  std::string s;
  for (const auto& a : args) s += (s.empty() ? "" : " ") + a;
  return s;
}

/// One-line digest of a command result for the text report.
std::string summary(const nlohmann::json& r) {
  std::ostringstream out;
  if (r.contains("table")) {
    out << "table";
    for (auto row = r["table"].rbegin(); row != r["table"].rend(); ++row) {
      out << " |";
      for (const auto& v : *row) out << " " << v.get<std::size_t>();
    }
  } else if (r.contains("dims")) {
    out << "dims";
    for (const auto& e : r["dims"]) out << " " << e[0].get<std::string>() << ":" << e[1].get<std::size_t>();
  } else if (r.contains("torsion")) {
    std::size_t total = 0;
    for (const auto& e : r["torsion"]["degrees"]) total += e["dim"].get<std::size_t>();
    out << "torsion dimension " << total;
  } else if (r.contains("dim")) {
    out << "dimension " << r["dim"].get<std::size_t>();
  } else if (r.contains("algebra")) {
    out << r["algebra"]["objects"].size() << " objects, " << r["algebra"]["components"].size() << " nonzero components";
  } else if (r.contains("probe")) {
    out << "dims";
    for (const auto& step : r["probe"]["steps"]) out << " " << step["dim"].get<std::size_t>();
    out << (r["probe"]["stabilized"].get<bool>() ? " (stabilized)" : " (not stabilized)");
  }
  if (r.contains("generators")) {
    if (out.tellp() > 0) out << "; ";
    out << r["generators"]["total"].get<std::size_t>() << " generators";
    for (const auto& c : r["generators"]["counts"]) {
      out << " " << c["degree"].get<std::string>() << "x" << c["count"].get<std::size_t>();
    }
  }
  return out.str();
}

}  // namespace

Status worst(Status a, Status b) { return severity(a) >= severity(b) ? a : b; }

// ---------------------------------------------------------------- building

std::shared_ptr<const PresentedAlgebra> build_algebra(const SessionSpec& spec, const std::string& name,
                                                      const AlgebraLimits& limits) {
  PosetPtr poset = build_poset(spec.poset);
  const Field field = spec.field.build();
  std::vector<Generator> gens;
  for (const auto& g : spec.algebra.generators) gens.push_back({g.name, g.degree});
  auto id_of = [&](const std::string& n) {
    for (std::size_t k = 0; k < gens.size(); ++k) {
      if (gens[k].name == n) return static_cast<std::uint16_t>(k);
    }
    throw DegreeError("unknown generator " + n);
  };
  std::vector<Relation> rels;
  for (const auto& r : spec.algebra.relations) {
    Relation rel;
    for (const auto& t : r.terms) {
      Word w;
      for (const auto& g : t.word) w.push_back(id_of(g));
      rel.terms.push_back({field.from_rational(t.coeff), std::move(w)});
    }
    if (r.degree) rel.degree = *r.degree;
    rels.push_back(std::move(rel));
  }
  return std::make_shared<const PresentedAlgebra>(name, poset, field, std::move(gens), std::move(rels), limits);
}

Session::Session(const SessionSpec& given, RunOptions options) : options_(std::move(options)) {
  SessionSpec spec = given;
  if (options_.field) spec.field = *options_.field;
  algebra_ = build_algebra(spec, options_.name, options_.limits);
  const AlgebraPtr a = algebra_;
  for (const auto& m : spec.modules) {
    ModulePtr built;
    switch (m.kind) {
      case ModuleDecl::Kind::Free: built = ModulePresentation::free(m.name, a, m.target); break;
      case ModuleDecl::Kind::Coker: {
        ModuleMap map;
        map.source.degrees = m.source;
        map.target.degrees = m.target;
        map.entries.assign(m.target.size(), std::vector<Vec>(m.source.size()));
        for (std::size_t t = 0; t < m.source.size(); ++t) {
          for (std::size_t l = 0; l < m.target.size(); ++l) {
            map.entries[l][t] = combination_vec(*algebra_, m.target[l], m.source[t], m.columns[t][l]);
          }
        }
        built = std::make_shared<const ModulePresentation>(m.name, a, std::move(map));
        break;
      }
      case ModuleDecl::Kind::Simple:
        built = ModulePresentation::cyclic_quotient(m.name, a, m.degree, diagonal_tail_generators(m.degree));
        break;
      case ModuleDecl::Kind::Trunc:
        built = std::make_shared<const TailQuotientModule>(m.name, module(m.operands.at(0)), m.degree);
        break;
      case ModuleDecl::Kind::Zero: built = ModulePresentation::zero(m.name, a); break;
      case ModuleDecl::Kind::Sum: {
        ModulePtr acc = module(m.operands.at(0));
        for (std::size_t k = 1; k < m.operands.size(); ++k) {
          ModulePtr next = module(m.operands[k]);
          auto pa = std::dynamic_pointer_cast<const ModulePresentation>(acc);
          auto pb = std::dynamic_pointer_cast<const ModulePresentation>(next);
          const std::string name = k + 1 == m.operands.size() ? m.name : m.name + "." + std::to_string(k);
          if (pa && pb) acc = ModulePresentation::direct_sum(name, *pa, *pb);
          else acc = std::make_shared<const DirectSumModule>(name, acc, next);
        }
        built = acc;
        break;
      }
    }
    modules_[m.name] = built;
    names_.push_back(m.name);
  }
}

std::vector<ModuleElement> Session::diagonal_tail_generators(const Index& i) const {
  const auto star = star_generators(algebra_, i, options_.policy);
  if (!star.outcome.verified()) {
    throw Error("simple module at " + algebra_->poset().format(i) + " needs a finitely generated diagonal tail");
  }
  return star.generators().generators;
}

PresentationPtr Session::simple_at(const Index& i) const {
  return ModulePresentation::cyclic_quotient("S" + algebra_->poset().format(i), algebra_, i,
                                             diagonal_tail_generators(i));
}

ModulePtr Session::module(const std::string& name) const {
  auto it = modules_.find(name);
  if (it == modules_.end()) throw Error("unknown module " + name);
  return it->second;
}

ModulePtr Session::resolve(const ModuleRef& ref) const {
  if (ref.free_at) return ModulePresentation::free(ref.name, algebra_, {*ref.free_at});
  if (ref.simple_at) return simple_at(*ref.simple_at);
  return module(ref.name);
}

PresentationPtr Session::resolve_presentation(const ModuleRef& ref) const {
  auto p = std::dynamic_pointer_cast<const ModulePresentation>(resolve(ref));
  if (!p) throw Error("module " + ref.name + " is not given by a presentation");
  return p;
}

// ---------------------------------------------------------------- commands

CommandResult Session::outcome_result(const CheckOutcome& o) const {
  CommandResult r;
  r.status = status_of(o.verdict);
  r.json["outcome"] = o.to_json();
  if (options_.replay) {
    auto replays = nlohmann::json::array();
    for (const auto& c : collect_certificates(o)) {
      const auto rr = c->replay();
      replays.push_back({{"kind", c->kind()}, {"ok", rr.ok}, {"detail", rr.detail}});
      if (!rr.ok) r.status = Status::Error;
    }
    r.json["replay"] = replays;
  }
  return r;
}

CommandResult Session::run(const std::vector<std::string>& args, const std::optional<WindowDecl>& current) const {
  CommandResult r;
  try {
    const Command cmd = parse_command(args, algebra_->poset(), names_);
    std::optional<WindowDecl> wd = options_.window ? options_.window : (cmd.window ? cmd.window : current);
    if (!wd && cmd.verb == "hom") wd = WindowDecl{Index(std::vector<std::int64_t>(algebra_->poset().arity(), 0)),
                                                    Index(std::vector<std::int64_t>(algebra_->poset().arity(), 0))};
    if (!wd) throw Error("no window in effect");
    const Window w = Window::box(algebra_->poset_ptr(), wd->lo, wd->hi, options_.window_limit);
    r = execute(cmd, w);
    r.json["window"] = w.describe();
  } catch (const ResourceLimitError& e) {
    r.status = Status::ResourceLimit;
    r.json["error"] = e.what();
  } catch (const ParseError& e) {
    r.status = Status::Error;
    r.json["error"] = "argument " + std::to_string(e.column()) + ": " + e.message();
  } catch (const std::exception& e) {
    r.status = Status::Error;
    r.json["error"] = e.what();
  }
  r.json["command"] = join(args);
  r.json["status"] = to_string(r.status);
  return r;
}

CommandResult Session::execute(const Command& cmd, const Window& w) const {
  const Poset& poset = algebra_->poset();
  const AlgebraPtr a = algebra_;
  const auto& v = cmd.verb;
  CommandResult r;

  if (v == "dims") {
    if (cmd.modules.empty()) {
      const Index i = w.lo();
      r.json = dims_table(poset, w, [&](const Index& j) { return a->dim(i, j); });
      r.json["source"] = poset.format(i);
    } else {
      auto m = resolve(cmd.modules[0]);
      r.json = dims_table(poset, w, [&](const Index& j) { return m->dim(j); });
      r.json["module"] = m->name();
    }
    return r;
  }
  if (v == "tail") {
    auto m = resolve(cmd.modules[0]);
    const Subfamily t = tail(m, cmd.degrees[0], !cmd.weak, w);
    r.json = dims_table(poset, w, [&](const Index& j) { return t.dim(j); });
    r.json["generators"] = min_generators(t).to_json(poset);
    r.json["cut"] = poset.format(cmd.degrees[0]);
    r.json["strict"] = !cmd.weak;
    return r;
  }
  if (v == "gens") {
    auto m = resolve(cmd.modules[0]);
    const Subfamily s = cmd.degrees.empty() ? full_restriction(m, w) : tail(m, cmd.degrees[0], true, w);
    r.json["generators"] = min_generators(s).to_json(poset);
    return r;
  }
  if (v == "torsion") {
    auto m = resolve(cmd.modules[0]);
    r.json["torsion"] = torsion_elements(m, w).to_json(poset);
    return r;
  }
  if (v == "hom") {
    auto m = resolve_presentation(cmd.modules[0]);
    auto n = resolve(cmd.modules[1]);
    const HomSpace h = hom_space(*m, *n);
    r.json["dim"] = h.dim();
    auto degs = nlohmann::json::array();
    for (const auto& j : h.generator_degrees) degs.push_back(poset.format(j));
    r.json["generator_degrees"] = degs;
    return r;
  }
  if (v == "tau") {
    auto m = resolve(cmd.modules[0]);
    const auto t = tau_colimit(m, diagonal_chain(w, options_.probe_length), w);
    const bool agrees = t.values.back() == torsion_elements(m, w).as_subfamily(m);
    r.json["probe"] = t.probe.to_json(poset);
    r.json["agrees_with_torsion"] = agrees;
    r.status = t.probe.stabilized && agrees ? Status::Verified : Status::Inconclusive;
    return r;
  }
  if (v == "qgrhom") {
    const auto p = qgr_hom(resolve(cmd.modules[0]), resolve(cmd.modules[1]), diagonal_chain(w, options_.probe_length), w);
    r.json["probe"] = p.to_json(poset);
    r.status = p.stabilized ? Status::Verified : Status::Inconclusive;
    return r;
  }
  if (v == "saturate") {
    const auto s = saturation_component(resolve(cmd.modules[0]), cmd.degrees[0], diagonal_chain(w, options_.probe_length), w);
    r.json["probe"] = s.probe.to_json(poset);
    r.json["natural_injective"] = s.natural_injective;
    r.json["natural_rank"] = s.natural_rank;
    r.status = s.probe.stabilized ? Status::Verified : Status::Inconclusive;
    return r;
  }
  if (v == "chi1") {
    return outcome_result(chi1_probe(resolve(cmd.modules[0]), cmd.degrees[0], w, options_.probe_length));
  }
  if (v == "aofseq") {
    std::vector<PresentationPtr> family;
    std::vector<Index> indices;
    for (const auto& ref : cmd.modules) {
      family.push_back(resolve_presentation(ref));
      indices.push_back(*ref.index());
    }
    const auto res = a_of_sequence(family, indices);
    r = outcome_result(res.connectedness);
    if (res.algebra) {
      const auto& ae = *res.algebra;
      const auto& names = ae.poset().names();
      auto comps = nlohmann::json::array();
      for (std::size_t p = 0; p < names.size(); ++p) {
        for (std::size_t q = 0; q < names.size(); ++q) {
          const Index ip{static_cast<std::int64_t>(p)}, iq{static_cast<std::int64_t>(q)};
          if (!ae.poset().leq(ip, iq)) continue;
          comps.push_back({{"from", names[p]}, {"to", names[q]}, {"dim", ae.dim(ip, iq)}});
        }
      }
      r.json["algebra"] = {{"kind", "explicit"}, {"objects", names}, {"components", comps}};
    }
    return r;
  }

  const std::string& c = cmd.check;
  if (c == "star") return outcome_result(check_star(a, w, options_.policy));
  if (c == "cocompact") {
    std::vector<std::pair<Index, Index>> pairs;
    if (cmd.degrees.size() == 2) pairs.emplace_back(cmd.degrees[0], cmd.degrees[1]);
    return outcome_result(check_tails_cocompact(a, w, pairs, options_.policy));
  }
  if (c == "strong") return outcome_result(check_strongly_indexed(a, w));
  if (c == "criterion") return outcome_result(strong_indexing_route(a, w, options_.policy));
  if (c == "coherence") {
    std::vector<ModuleMap> maps;
    for (const auto& ref : cmd.modules) maps.push_back(resolve_presentation(ref)->map());
    return outcome_result(check_coherence_probe(a, w, maps, options_.policy));
  }
  if (c == "sequence") {
    std::vector<ModulePtr> samples;
    for (const auto& ref : cmd.modules) samples.push_back(resolve(ref));
    const auto rep = check_sequence_conditions(a, w, samples, options_.policy);
    return outcome_result(rep.combined());
  }
  throw Error("unhandled command " + v);
}

// ---------------------------------------------------------------- reports

Report run_text(const std::string& text, const RunOptions& options,
                const std::optional<std::vector<std::string>>& command) {
  Report rep;
  auto& j = rep.json;
  j["schema"] = 1;
  j["engine"] = std::string("ialg ") + engine_version();
  j["input_digest"] = "fnv1a64:" + fnv1a_hex(text);
  j["name"] = options.name;
  std::ostringstream txt;

  SessionSpec spec;
  try {
    spec = parse_session(text);
  } catch (const ParseError& e) {
    rep.status = Status::Error;
    j["error"] = {{"line", e.line()}, {"column", e.column()}, {"message", e.message()}};
    j["status"] = to_string(rep.status);
    j["exit_code"] = rep.exit_code();
    txt << options.name << ":" << e.line() << ":" << e.column() << ": " << e.message() << "\n";
    rep.text = txt.str();
    return rep;
  }

  std::unique_ptr<Session> session;
  try {
    session = std::make_unique<Session>(spec, options);
  } catch (const ResourceLimitError& e) {
    rep.status = Status::ResourceLimit;
    j["error"] = {{"message", e.what()}};
  } catch (const std::exception& e) {
    rep.status = Status::Error;
    j["error"] = {{"message", e.what()}};
  }
  if (!session) {
    j["status"] = to_string(rep.status);
    j["exit_code"] = rep.exit_code();
    rep.text = options.name + ": " + j["error"]["message"].get<std::string>() + "\n";
    return rep;
  }

  const auto& a = *session->algebra();
  j["algebra"] = {{"poset", a.poset().describe()},
                  {"field", a.field().name()},
                  {"kind", a.kind() == PresentedAlgebra::Kind::Invariant ? "invariant" : "explicit"},
                  {"generators", a.generators().size()},
                  {"relations", a.relations().size()}};
  txt << options.name << ": " << a.poset().describe() << " over " << a.field().name() << ", "
      << a.generators().size() << " generators, " << a.relations().size() << " relations\n";

  auto results = nlohmann::json::array();
  std::optional<WindowDecl> current;
  auto run_one = [&](const std::vector<std::string>& args) {
    CommandResult r = session->run(args, current);
    rep.status = worst(rep.status, r.status);
    txt << "  [" << to_string(r.status) << "] " << join(args);
    if (r.json.contains("window")) txt << "  on " << r.json["window"].get<std::string>();
    if (r.json.contains("outcome") && r.json["outcome"].contains("note")) {
      txt << "  (" << r.json["outcome"]["note"].get<std::string>() << ")";
    }
    if (r.json.contains("error")) txt << "  " << r.json["error"].get<std::string>();
    txt << "\n";
    if (const auto line = summary(r.json); !line.empty()) txt << "      " << line << "\n";
    results.push_back(std::move(r.json));
  };
  for (const auto& s : spec.body) {
    if (const auto* w = std::get_if<WindowDecl>(&s)) {
      current = *w;
    } else if (!command) {
      run_one(std::get<RunDecl>(s).args);
    }
  }
  if (command) run_one(*command);

  j["results"] = results;
  j["status"] = to_string(rep.status);
  j["exit_code"] = rep.exit_code();
  rep.text = txt.str();
  return rep;
}

}  // namespace ialg
