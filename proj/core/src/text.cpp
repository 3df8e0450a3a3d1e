#include "ialg/text.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "ialg/errors.hpp"

namespace ialg {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

/// Character cursor over one line; columns are 1-based.
class Cursor {
 public:
  Cursor(std::string text, std::size_t line, std::size_t base = 0)
      : s_(std::move(text)), line_(line), base_(base) {}

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eof() {
    skip_ws();
    return pos_ >= s_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool peek_is(const std::string& tok) {
    skip_ws();
    return s_.compare(pos_, tok.size(), tok) == 0;
  }
  bool accept(const std::string& tok) {
    if (!peek_is(tok)) return false;
    pos_ += tok.size();
    return true;
  }
  void expect(const std::string& tok) {
    if (!accept(tok)) fail("expected '" + tok + "'");
  }
  std::size_t column() {
    skip_ws();
    return base_ + pos_ + 1;
  }
  std::size_t line() const { return line_; }

  [[noreturn]] void fail(const std::string& message) { fail_at(column(), message); }
  [[noreturn]] void fail_at(std::size_t col, const std::string& message) {
    throw ParseError(line_, col, message);
  }

  std::string ident() {
    skip_ws();
    if (pos_ >= s_.size() || !ident_start(s_[pos_])) fail("expected an identifier");
    const std::size_t start = pos_;
    while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
    return s_.substr(start, pos_ - start);
  }
  bool at_ident() {
    skip_ws();
    return pos_ < s_.size() && ident_start(s_[pos_]);
  }
  bool at_number() {
    skip_ws();
    if (pos_ >= s_.size()) return false;
    if (std::isdigit(static_cast<unsigned char>(s_[pos_]))) return true;
    return s_[pos_] == '-' && pos_ + 1 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]));
  }
  std::int64_t integer() {
    skip_ws();
    const std::size_t start = pos_;
    if (pos_ < s_.size() && s_[pos_] == '-') ++pos_;
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected an integer");
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    try {
      return std::stoll(s_.substr(start, pos_ - start));
    } catch (const std::out_of_range&) {
      fail_at(base_ + start + 1, "integer out of range");
    }
  }
  /// Unsigned rational "p" or "p/q".
  Scalar rational() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ < s_.size() && s_[pos_] == '/') {
      ++pos_;
      const std::size_t den = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (den == pos_) fail("expected a denominator");
    }
    Scalar q(s_.substr(start, pos_ - start));
    if (q.get_den() == 0) fail_at(base_ + start + 1, "zero denominator");
    q.canonicalize();
    return q;
  }
  std::string rest() {
    skip_ws();
    return s_.substr(pos_);
  }
  std::size_t offset() const { return pos_; }

 private:
  std::string s_;
  std::size_t line_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------- degrees

std::int64_t finite_id(Cursor& c, const Poset& factor) {
  const std::size_t col = c.column();
  const std::string name = c.ident();
  auto id = factor.id_of(name);
  if (!id) c.fail_at(col, "unknown element " + name);
  return *id;
}

bool bare_finite(const Poset& poset) { return poset.kind() == Poset::Kind::FiniteExplicit; }

Index read_index(Cursor& c, const Poset& poset) {
  if (bare_finite(poset) && c.at_ident()) return Index{finite_id(c, poset)};
  const std::size_t col = c.column();
  c.expect("(");
  std::vector<std::int64_t> coords;
  do {
    const std::size_t k = coords.size();
    if (k >= poset.arity()) c.fail_at(col, "degree has more than " + std::to_string(poset.arity()) + " coordinates");
    if (poset.is_finite_coord(k)) coords.push_back(finite_id(c, *poset.finite_factor_of(k)));
    else coords.push_back(c.integer());
  } while (c.accept(","));
  c.expect(")");
  if (coords.size() != poset.arity()) {
    c.fail_at(col, "degree has " + std::to_string(coords.size()) + " coordinates, poset has " +
                       std::to_string(poset.arity()));
  }
  return Index(std::move(coords));
}

CoordStep read_coord_step(Cursor& c, const Poset& poset, std::size_t k) {
  if (poset.is_finite_coord(k)) {
    const Poset& factor = *poset.finite_factor_of(k);
    if (c.at_number()) {
      const std::size_t col = c.column();
      if (c.integer() != 0) c.fail_at(col, "translation on a finite factor");
      return CoordStep::add(0);
    }
    const std::int64_t from = finite_id(c, factor);
    c.expect("->");
    return CoordStep::move(from, finite_id(c, factor));
  }
  const std::int64_t v = c.integer();
  if (c.accept("->")) return CoordStep::move(v, c.integer());
  return CoordStep::add(v);
}

Step read_step(Cursor& c, const Poset& poset) {
  if (bare_finite(poset) && c.at_ident()) return Step({read_coord_step(c, poset, 0)});
  const std::size_t col = c.column();
  c.expect("(");
  std::vector<CoordStep> ops;
  do {
    if (ops.size() >= poset.arity()) c.fail_at(col, "degree has too many coordinates");
    ops.push_back(read_coord_step(c, poset, ops.size()));
  } while (c.accept(","));
  c.expect(")");
  if (ops.size() != poset.arity()) {
    c.fail_at(col, "degree has " + std::to_string(ops.size()) + " coordinates, poset has " +
                       std::to_string(poset.arity()));
  }
  return Step(std::move(ops));
}

std::string index_text(const Poset& poset, const Index& i) { return poset.format(i); }

std::string free_text(const Poset& poset, const Index& i) {
  const std::string f = poset.format(i);
  return "P" + (f.front() == '(' ? f : "(" + f + ")");
}

Index read_free(Cursor& c, const Poset& poset) {
  c.expect("P");
  if (bare_finite(poset)) {
    c.expect("(");
    Index i = read_index(c, poset);
    c.expect(")");
    return i;
  }
  return read_index(c, poset);
}

// ---------------------------------------------------------------- combinations

using GeneratorTable = std::map<std::string, Step>;

std::vector<std::string> resolve_word(Cursor& c, std::size_t col, const std::string& token,
                                      const GeneratorTable& gens) {
  if (gens.count(token)) return {token};
  std::vector<std::string> out;
  for (char ch : token) {
    const std::string one(1, ch);
    if (!gens.count(one)) c.fail_at(col, "unknown generator " + token);
    out.push_back(one);
  }
  return out;
}

Combination read_combination(Cursor& c, const GeneratorTable& gens) {
  Combination out;
  bool first = true;
  while (true) {
    bool negative = false;
    if (c.accept("+")) {
    } else if (c.accept("-")) {
      negative = true;
    } else if (!first) {
      break;
    }
    first = false;
    TermDecl t;
    t.coeff = 1;
    if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
      t.coeff = c.rational();
      if (!c.accept("*")) {
        if (negative) t.coeff = -t.coeff;
        if (t.coeff != 0) out.push_back(std::move(t));
        continue;
      }
    }
    do {
      const std::size_t col = c.column();
      auto part = resolve_word(c, col, c.ident(), gens);
      t.word.insert(t.word.end(), part.begin(), part.end());
    } while (c.accept("*"));
    if (negative) t.coeff = -t.coeff;
    if (t.coeff != 0) out.push_back(std::move(t));
  }
  return out;
}

std::optional<Step> word_step(const std::vector<std::string>& word, const GeneratorTable& gens) {
  if (word.empty()) return std::nullopt;
  std::optional<Step> s = gens.at(word.front());
  for (std::size_t k = 1; k < word.size() && s; ++k) s = s->then(gens.at(word[k]));
  return s;
}

// ---------------------------------------------------------------- poset declarations

PosetDecl read_poset(Cursor& c) {
  PosetDecl d;
  const std::size_t col = c.column();
  const std::string kw = c.ident();
  if (kw == "zlattice") {
    d.kind = PosetDecl::Kind::Lattice;
    const std::int64_t r = c.integer();
    if (r < 1) c.fail_at(col, "lattice rank must be positive");
    d.rank = static_cast<std::size_t>(r);
  } else if (kw == "finite") {
    d.kind = PosetDecl::Kind::Finite;
    c.expect("{");
    if (!c.accept("}")) {
      do d.names.push_back(c.ident());
      while (c.accept(","));
      c.expect("}");
    }
    c.expect("{");
    if (!c.accept("}")) {
      do {
        std::string a = c.ident();
        while (c.accept("<")) {
          std::string b = c.ident();
          d.less.emplace_back(a, b);
          a = b;
        }
      } while (c.accept(","));
      c.expect("}");
    }
  } else if (kw == "product") {
    d.kind = PosetDecl::Kind::Product;
    for (int k = 0; k < 2; ++k) {
      c.expect("(");
      d.factors.push_back(read_poset(c));
      c.expect(")");
    }
  } else {
    c.fail_at(col, "unknown poset kind " + kw);
  }
  return d;
}

// ---------------------------------------------------------------- run arguments

struct Arg {
  std::string text;
  std::size_t offset;
};

std::vector<Arg> split_with_offsets(const std::string& text) {
  std::vector<Arg> out;
  int depth = 0;
  std::size_t start = std::string::npos;
  for (std::size_t k = 0; k <= text.size(); ++k) {
    const char ch = k < text.size() ? text[k] : ' ';
    if (ch == '(' || ch == '[' || ch == '{') ++depth;
    if (ch == ')' || ch == ']' || ch == '}') --depth;
    const bool space = std::isspace(static_cast<unsigned char>(ch)) && depth <= 0;
    if (space) {
      if (start != std::string::npos) out.push_back({text.substr(start, k - start), start});
      start = std::string::npos;
    } else if (start == std::string::npos) {
      start = k;
    }
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- public helpers

PosetPtr build_poset(const PosetDecl& decl) {
  switch (decl.kind) {
    case PosetDecl::Kind::Lattice: return Poset::lattice(decl.rank);
    case PosetDecl::Kind::Finite: return Poset::finite(decl.names, decl.less);
    case PosetDecl::Kind::Product: return Poset::product(build_poset(decl.factors.at(0)), build_poset(decl.factors.at(1)));
  }
  throw PosetError("unknown poset kind");
}

std::string print_poset(const PosetDecl& decl) {
  switch (decl.kind) {
    case PosetDecl::Kind::Lattice: return "zlattice " + std::to_string(decl.rank);
    case PosetDecl::Kind::Finite: {
      std::string s = "finite {";
      for (std::size_t k = 0; k < decl.names.size(); ++k) s += (k ? "," : "") + decl.names[k];
      s += "} {";
      for (std::size_t k = 0; k < decl.less.size(); ++k) {
        s += (k ? ", " : "") + decl.less[k].first + "<" + decl.less[k].second;
      }
      return s + "}";
    }
    case PosetDecl::Kind::Product:
      return "product (" + print_poset(decl.factors.at(0)) + ") (" + print_poset(decl.factors.at(1)) + ")";
  }
  return {};
}

Index parse_index(const Poset& poset, const std::string& text) {
  Cursor c(text, 0);
  Index i = read_index(c, poset);
  if (!c.eof()) c.fail("trailing characters in degree");
  return i;
}

std::string format_combination(const Combination& comb) {
  if (comb.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < comb.size(); ++k) {
    const auto& t = comb[k];
    const bool negative = sgn(t.coeff) < 0;
    const Scalar mag = negative ? Scalar(-t.coeff) : t.coeff;
    if (k == 0) out += negative ? "-" : "";
    else out += negative ? " - " : " + ";
    std::string word;
    for (std::size_t w = 0; w < t.word.size(); ++w) word += (w ? "*" : "") + t.word[w];
    if (word.empty()) out += mag.get_str();
    else if (mag == 1) out += word;
    else out += mag.get_str() + "*" + word;
  }
  return out;
}

std::vector<std::string> split_args(const std::string& text) {
  std::vector<std::string> out;
  for (auto& a : split_with_offsets(text)) out.push_back(std::move(a.text));
  return out;
}

// ---------------------------------------------------------------- commands

std::optional<Index> ModuleRef::index() const {
  if (free_at) return free_at;
  if (simple_at) return simple_at;
  return placed_at;
}

const std::vector<std::string>& command_verbs() {
  static const std::vector<std::string> verbs = {"dims",     "tail", "gens",   "torsion", "hom",  "tau",
                                                 "qgrhom",   "saturate", "chi1", "aofseq", "check"};
  return verbs;
}

const std::vector<std::string>& check_kinds() {
  static const std::vector<std::string> kinds = {"star", "cocompact", "strong", "criterion", "coherence", "sequence"};
  return kinds;
}

Command parse_command(const std::vector<std::string>& args, const Poset& poset,
                      const std::vector<std::string>& module_names) {
  auto fail = [](std::size_t k, const std::string& msg) -> void { throw ParseError(0, k + 1, msg); };
  if (args.empty()) fail(0, "missing command");
  Command cmd;
  cmd.verb = args[0];
  const auto& verbs = command_verbs();
  if (std::find(verbs.begin(), verbs.end(), cmd.verb) == verbs.end()) fail(0, "unknown command " + cmd.verb);
  std::size_t k = 1;
  if (cmd.verb == "check") {
    if (args.size() < 2) fail(0, "check needs a kind");
    cmd.check = args[1];
    const auto& kinds = check_kinds();
    if (std::find(kinds.begin(), kinds.end(), cmd.check) == kinds.end()) fail(1, "unknown check " + cmd.check);
    k = 2;
  }
  auto is_module = [&](const std::string& s) {
    return std::find(module_names.begin(), module_names.end(), s) != module_names.end();
  };
  auto degree = [&](std::size_t at, const std::string& text) {
    try {
      return parse_index(poset, text);
    } catch (const ParseError& e) {
      throw ParseError(0, at + 1, "bad degree " + text + ": " + e.message());
    }
  };
  for (; k < args.size(); ++k) {
    const std::string& a = args[k];
    if (a == "weak" || a == "strict") {
      cmd.weak = a == "weak";
    } else if (auto dots = a.find(".."); dots != std::string::npos) {
      if (cmd.window) fail(k, "window given twice");
      cmd.window = WindowDecl{degree(k, a.substr(0, dots)), degree(k, a.substr(dots + 2))};
    } else if (is_module(a)) {
      cmd.modules.push_back({a, {}, {}, {}});
    } else if (auto at = a.find('@'); at != std::string::npos) {
      const std::string name = a.substr(0, at);
      if (!is_module(name)) fail(k, "unknown module " + name);
      cmd.modules.push_back({name, {}, {}, degree(k, a.substr(at + 1))});
    } else if (a.size() > 2 && (a[0] == 'P' || a[0] == 'S') && a[1] == '(') {
      std::string inner = a.substr(1);
      if (bare_finite(poset)) inner = inner.substr(1, inner.size() - 2);
      ModuleRef r;
      r.name = a;
      (a[0] == 'P' ? r.free_at : r.simple_at) = degree(k, inner);
      cmd.modules.push_back(std::move(r));
    } else {
      try {
        cmd.degrees.push_back(parse_index(poset, a));
      } catch (const ParseError&) {
        fail(k, "unknown argument " + a);
      }
    }
  }

  const std::size_t nm = cmd.modules.size(), nd = cmd.degrees.size();
  auto require = [&](bool ok, const std::string& usage) {
    if (!ok) fail(0, "usage: " + usage);
  };
  auto degrees_as_window = [&] {
    if (nd == 2 && !cmd.window) {
      cmd.window = WindowDecl{cmd.degrees[0], cmd.degrees[1]};
      cmd.degrees.clear();
    }
  };
  const std::string& v = cmd.verb;
  if (v == "dims") {
    require(nm <= 1 && (nd == 0 || nd == 2), "dims [module] [lo hi | lo..hi]");
    degrees_as_window();
  } else if (v == "tail") {
    require(nm == 1 && nd == 1, "tail <module> <cut> [weak] [lo..hi]");
  } else if (v == "gens") {
    require(nm == 1 && nd <= 1, "gens <module> [cut] [lo..hi]");
  } else if (v == "torsion" || v == "tau") {
    require(nm == 1 && nd == 0, v + " <module> [lo..hi]");
  } else if (v == "hom" || v == "qgrhom") {
    require(nm == 2 && nd == 0, v + " <module> <module> [lo..hi]");
  } else if (v == "saturate" || v == "chi1") {
    require(nm == 1 && nd == 1, v + " <module> <degree> [lo..hi]");
  } else if (v == "aofseq") {
    require(nm >= 1 && nd == 0, "aofseq <P(i) | S(i) | M@i>...");
    for (std::size_t m = 0; m < nm; ++m) {
      if (!cmd.modules[m].index()) fail(0, "aofseq needs an index for " + cmd.modules[m].name + " (use M@i)");
    }
  } else if (cmd.check == "cocompact") {
    require(nm == 0 && (nd == 0 || nd == 2), "check cocompact [lo..hi] [i d]");
    if (!cmd.window) degrees_as_window();
  } else if (cmd.check == "coherence") {
    degrees_as_window();
    require(nm >= 1 && cmd.degrees.empty(), "check coherence [lo..hi] <coker module>...");
  } else if (cmd.check == "sequence") {
    degrees_as_window();
    require(cmd.degrees.empty(), "check sequence [lo..hi] <module>...");
  } else {
    degrees_as_window();
    require(nm == 0 && cmd.degrees.empty(), "check " + cmd.check + " [lo..hi]");
  }
  if (cmd.weak && v != "tail") fail(0, "weak applies to tail only");
  return cmd;
}

// ---------------------------------------------------------------- sessions

namespace {

class SessionParser {
 public:
  SessionSpec parse(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
      ++line;
      const auto hash = raw.find('#');
      if (hash != std::string::npos) raw.erase(hash);
      Cursor c(raw, line);
      if (c.eof()) continue;
      statement(c);
    }
    if (!poset_) throw ParseError(line + 1, 1, "missing poset declaration");
    if (!algebra_seen_) throw ParseError(line + 1, 1, "missing algebra declaration");
    return std::move(spec_);
  }

 private:
  void statement(Cursor& c) {
    const std::size_t col = c.column();
    const std::string kw = c.ident();
    if (kw == "poset") return poset_line(c, col);
    if (kw == "field") return field_line(c, col);
    if (!poset_) c.fail_at(col, "poset must be declared first");
    if (kw == "algebra") return algebra_line(c, col);
    if (kw == "gen") return gen_line(c);
    if (kw == "rel") return rel_line(c);
    if (kw == "module") return module_line(c);
    if (kw == "window") return window_line(c);
    if (kw == "run") return run_line(c);
    c.fail_at(col, "unknown statement " + kw);
  }

  void finish(Cursor& c) {
    if (!c.eof()) c.fail("unexpected text");
  }

  void poset_line(Cursor& c, std::size_t col) {
    if (poset_) c.fail_at(col, "poset declared twice");
    spec_.poset = read_poset(c);
    finish(c);
    try {
      poset_ = build_poset(spec_.poset);
    } catch (const Error& e) {
      c.fail_at(col, e.what());
    }
  }

  void field_tail(Cursor& c, std::size_t col) {
    const std::string f = c.ident();
    FieldDecl d;
    if (f == "Fp") {
      const std::int64_t p = c.integer();
      if (p < 2 || p >= (std::int64_t{1} << 31)) c.fail_at(col, "Fp needs a prime below 2^31");
      try {
        Field::prime(static_cast<std::uint32_t>(p));
      } catch (const std::exception&) {
        c.fail_at(col, "Fp needs a prime below 2^31");
      }
      d.prime = static_cast<std::uint32_t>(p);
    } else if (f != "Q") {
      c.fail_at(col, "unknown field " + f);
    }
    if (field_seen_ && !(d == spec_.field)) c.fail_at(col, "conflicting field declarations");
    spec_.field = d;
    field_seen_ = true;
  }

  void field_line(Cursor& c, std::size_t col) {
    field_tail(c, col);
    finish(c);
  }

  void algebra_line(Cursor& c, std::size_t col) {
    if (algebra_seen_) c.fail_at(col, "algebra declared twice");
    const std::size_t kcol = c.column();
    const std::string kind = c.ident();
    if (kind == "invariant") spec_.algebra.kind = AlgebraDecl::Kind::Invariant;
    else if (kind == "explicit") spec_.algebra.kind = AlgebraDecl::Kind::Explicit;
    else c.fail_at(kcol, "algebra kind must be invariant or explicit");
    if (spec_.algebra.kind == AlgebraDecl::Kind::Invariant && !poset_->is_lattice()) {
      c.fail_at(kcol, "invariant algebras need a lattice poset");
    }
    if (c.at_ident()) {
      const std::size_t fcol = c.column();
      if (c.ident() != "field") c.fail_at(fcol, "expected 'field'");
      field_tail(c, fcol);
    }
    finish(c);
    algebra_seen_ = true;
  }

  void need_algebra(Cursor& c, std::size_t col) {
    if (!algebra_seen_) c.fail_at(col, "algebra must be declared first");
  }

  void gen_line(Cursor& c) {
    const std::size_t col = c.column();
    need_algebra(c, col);
    const std::string name = c.ident();
    if (gens_.count(name)) c.fail_at(col, "generator " + name + " declared twice");
    const std::size_t dcol = c.column();
    Step s = read_step(c, *poset_);
    finish(c);
    try {
      s.validate_positive(*poset_);
    } catch (const DegreeError& e) {
      c.fail_at(dcol, e.what());
    }
    if (spec_.algebra.kind == AlgebraDecl::Kind::Invariant && !s.is_shift()) {
      c.fail_at(dcol, "invariant algebras take translation degrees only");
    }
    gens_.emplace(name, s);
    spec_.algebra.generators.push_back({name, std::move(s)});
  }

  void rel_line(Cursor& c) {
    const std::size_t col = c.column();
    need_algebra(c, col);
    RelDecl r;
    if (c.peek() == '(' || (bare_finite(*poset_) && looks_like_step(c))) {
      r.degree = read_step(c, *poset_);
      c.expect(":");
    } else {
      c.accept(":");
    }
    const std::size_t tcol = c.column();
    r.terms = read_combination(c, gens_);
    finish(c);
    if (r.terms.empty()) c.fail_at(tcol, "empty relation");
    std::optional<Step> degree = r.degree;
    for (const auto& t : r.terms) {
      if (t.word.empty()) c.fail_at(tcol, "relation terms must be paths");
      const auto s = word_step(t.word, gens_);
      if (!s) c.fail_at(tcol, "term " + format_combination({t}) + " is not a path");
      if (!degree) degree = s;
      if (!(*s == *degree)) {
        c.fail_at(tcol, "inhomogeneous relation: " + format_combination({t}) + " has degree " + s->format(*poset_) +
                            ", expected " + degree->format(*poset_));
      }
    }
    spec_.algebra.relations.push_back(std::move(r));
  }

  bool looks_like_step(Cursor& c) {
    const std::string rest = c.rest();
    const auto colon = rest.find(':');
    return colon != std::string::npos && rest.find("->") < colon;
  }

  void module_line(Cursor& c) {
    const std::size_t col = c.column();
    need_algebra(c, col);
    ModuleDecl m;
    m.name = c.ident();
    if (m.name == "P" || m.name == "S") c.fail_at(col, "module names P and S are reserved");
    if (std::find(module_names_.begin(), module_names_.end(), m.name) != module_names_.end()) {
      c.fail_at(col, "module " + m.name + " declared twice");
    }
    c.expect("=");
    const std::size_t fcol = c.column();
    const std::string form = c.ident();
    if (form == "free") {
      m.kind = ModuleDecl::Kind::Free;
      do m.target.push_back(read_free(c, *poset_));
      while (c.peek() == 'P');
    } else if (form == "coker") {
      m.kind = ModuleDecl::Kind::Coker;
      coker_body(c, m);
    } else if (form == "simple") {
      m.kind = ModuleDecl::Kind::Simple;
      m.degree = read_index(c, *poset_);
    } else if (form == "trunc") {
      m.kind = ModuleDecl::Kind::Trunc;
      m.operands.push_back(module_operand(c));
      m.degree = read_index(c, *poset_);
    } else if (form == "zero") {
      m.kind = ModuleDecl::Kind::Zero;
    } else if (form == "sum") {
      m.kind = ModuleDecl::Kind::Sum;
      m.operands.push_back(module_operand(c));
      do m.operands.push_back(module_operand(c));
      while (c.at_ident());
    } else {
      c.fail_at(fcol, "unknown module form " + form);
    }
    finish(c);
    module_names_.push_back(m.name);
    spec_.modules.push_back(std::move(m));
  }

  std::string module_operand(Cursor& c) {
    const std::size_t col = c.column();
    const std::string name = c.ident();
    if (std::find(module_names_.begin(), module_names_.end(), name) == module_names_.end()) {
      c.fail_at(col, "unknown module " + name);
    }
    return name;
  }

  void coker_body(Cursor& c, ModuleDecl& m) {
    c.expect("[");
    while (c.peek() == 'P') m.source.push_back(read_free(c, *poset_));
    c.expect("->");
    while (c.peek() == 'P') m.target.push_back(read_free(c, *poset_));
    if (m.target.empty()) c.fail("coker needs at least one target generator");
    if (!m.source.empty()) {
      c.expect(":");
      do {
        if (m.columns.size() >= m.source.size()) c.fail("more columns than sources");
        const Index& to = m.source[m.columns.size()];
        std::vector<Combination> column;
        do {
          if (column.size() >= m.target.size()) c.fail("more entries than target generators");
          const std::size_t ecol = c.column();
          column.push_back(read_combination(c, gens_));
          check_entry(c, ecol, column.back(), m.target[column.size() - 1], to);
        } while (c.accept(","));
        if (column.size() != m.target.size()) {
          c.fail("column has " + std::to_string(column.size()) + " entries, expected " +
                 std::to_string(m.target.size()));
        }
        m.columns.push_back(std::move(column));
      } while (c.accept(";"));
      if (m.columns.size() != m.source.size()) {
        c.fail(std::to_string(m.columns.size()) + " columns for " + std::to_string(m.source.size()) + " sources");
      }
    }
    c.expect("]");
  }

  void check_entry(Cursor& c, std::size_t col, const Combination& entry, const Index& from, const Index& to) {
    for (const auto& t : entry) {
      if (t.word.empty()) {
        if (!(from == to)) c.fail_at(col, "scalar entry between different degrees");
        continue;
      }
      const auto s = word_step(t.word, gens_);
      const auto end = s ? s->apply(from) : std::nullopt;
      if (!end || !(*end == to)) {
        c.fail_at(col, "entry " + format_combination({t}) + " does not map " + poset_->format(from) + " to " +
                           poset_->format(to));
      }
    }
  }

  void window_line(Cursor& c) {
    const std::size_t col = c.column();
    WindowDecl w;
    w.lo = read_index(c, *poset_);
    if (!c.accept("..")) {}
    w.hi = read_index(c, *poset_);
    finish(c);
    if (!poset_->leq(w.lo, w.hi)) c.fail_at(col, "window corners are not ordered");
    spec_.body.emplace_back(std::move(w));
  }

  void run_line(Cursor& c) {
    const std::size_t base = c.column() - 1;
    const std::string rest = c.rest();
    const auto args = split_with_offsets(rest);
    std::vector<std::string> texts;
    for (const auto& a : args) texts.push_back(a.text);
    try {
      parse_command(texts, *poset_, module_names_);
    } catch (const ParseError& e) {
      const std::size_t k = e.column() - 1;
      const std::size_t col = base + (k < args.size() ? args[k].offset : 0) + 1;
      throw ParseError(c.line(), col, e.message());
    }
    spec_.body.emplace_back(RunDecl{std::move(texts)});
  }

  SessionSpec spec_;
  PosetPtr poset_;
  bool field_seen_ = false;
  bool algebra_seen_ = false;
  GeneratorTable gens_;
  std::vector<std::string> module_names_;
};

}  // namespace

SessionSpec parse_session(const std::string& text) { return SessionParser().parse(text); }

std::string print_session(const SessionSpec& spec) {
  const PosetPtr poset = build_poset(spec.poset);
  std::ostringstream out;
  out << "poset " << print_poset(spec.poset) << "\n";
  out << "field " << (spec.field.prime ? "Fp " + std::to_string(*spec.field.prime) : std::string("Q")) << "\n";
  out << "algebra " << (spec.algebra.kind == AlgebraDecl::Kind::Invariant ? "invariant" : "explicit") << "\n";
  for (const auto& g : spec.algebra.generators) out << "gen " << g.name << " " << g.degree.format(*poset) << "\n";
  for (const auto& r : spec.algebra.relations) {
    out << "rel ";
    if (r.degree) out << r.degree->format(*poset) << ": ";
    out << format_combination(r.terms) << "\n";
  }
  for (const auto& m : spec.modules) {
    out << "module " << m.name << " = ";
    switch (m.kind) {
      case ModuleDecl::Kind::Free:
        out << "free";
        for (const auto& j : m.target) out << " " << free_text(*poset, j);
        break;
      case ModuleDecl::Kind::Coker: {
        out << "coker [";
        for (const auto& j : m.source) out << " " << free_text(*poset, j);
        out << " ->";
        for (const auto& j : m.target) out << " " << free_text(*poset, j);
        if (!m.columns.empty()) {
          out << " :";
          for (std::size_t t = 0; t < m.columns.size(); ++t) {
            out << (t ? " ; " : " ");
            for (std::size_t l = 0; l < m.columns[t].size(); ++l) {
              out << (l ? ", " : "") << format_combination(m.columns[t][l]);
            }
          }
        }
        out << " ]";
        break;
      }
      case ModuleDecl::Kind::Simple: out << "simple " << index_text(*poset, m.degree); break;
      case ModuleDecl::Kind::Trunc: out << "trunc " << m.operands.at(0) << " " << index_text(*poset, m.degree); break;
      case ModuleDecl::Kind::Zero: out << "zero"; break;
      case ModuleDecl::Kind::Sum:
        out << "sum";
        for (const auto& o : m.operands) out << " " << o;
        break;
    }
    out << "\n";
  }
  for (const auto& s : spec.body) {
    if (const auto* w = std::get_if<WindowDecl>(&s)) {
      out << "window " << index_text(*poset, w->lo) << " " << index_text(*poset, w->hi) << "\n";
    } else {
      const auto& r = std::get<RunDecl>(s);
      out << "run";
      for (const auto& a : r.args) out << " " << a;
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace ialg
