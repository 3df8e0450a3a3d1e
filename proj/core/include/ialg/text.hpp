#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ialg/algebra.hpp"
#include "ialg/field.hpp"
#include "ialg/poset.hpp"

namespace ialg {

struct PosetDecl {
  enum class Kind { Lattice, Finite, Product };
  Kind kind = Kind::Lattice;
  std::size_t rank = 0;
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> less;
  std::vector<PosetDecl> factors;

  friend bool operator==(const PosetDecl&, const PosetDecl&) = default;
};

PosetPtr build_poset(const PosetDecl& decl);
std::string print_poset(const PosetDecl& decl);

struct FieldDecl {
  std::optional<std::uint32_t> prime;
  Field build() const { return prime ? Field::prime(*prime) : Field::rationals(); }
  friend bool operator==(const FieldDecl&, const FieldDecl&) = default;
};

/// coeff * g1 * g2 * ... over generator names.
struct TermDecl {
  Scalar coeff;
  std::vector<std::string> word;
  friend bool operator==(const TermDecl&, const TermDecl&) = default;
};
using Combination = std::vector<TermDecl>;

struct GenDecl {
  std::string name;
  Step degree;
  friend bool operator==(const GenDecl&, const GenDecl&) = default;
};

struct RelDecl {
  /// Inferred from the first term when absent.
  std::optional<Step> degree;
  Combination terms;
  friend bool operator==(const RelDecl&, const RelDecl&) = default;
};

struct AlgebraDecl {
  enum class Kind { Invariant, Explicit };
  Kind kind = Kind::Invariant;
  std::vector<GenDecl> generators;
  std::vector<RelDecl> relations;
  friend bool operator==(const AlgebraDecl&, const AlgebraDecl&) = default;
};

struct ModuleDecl {
  enum class Kind { Free, Coker, Simple, Trunc, Zero, Sum };
  std::string name;
  Kind kind = Kind::Zero;
  /// Free: generator degrees. Coker: target generator degrees.
  std::vector<Index> target;
  /// Coker: relation degrees, with columns[t][l] in A_{target[l], source[t]}.
  std::vector<Index> source;
  std::vector<std::vector<Combination>> columns;
  /// Simple: the index. Trunc: the cut.
  Index degree;
  /// Trunc: base module. Sum: the summands.
  std::vector<std::string> operands;
  friend bool operator==(const ModuleDecl&, const ModuleDecl&) = default;
};

struct WindowDecl {
  Index lo, hi;
  friend bool operator==(const WindowDecl&, const WindowDecl&) = default;
};

struct RunDecl {
  std::vector<std::string> args;
  friend bool operator==(const RunDecl&, const RunDecl&) = default;
};

using Statement = std::variant<WindowDecl, RunDecl>;

struct SessionSpec {
  PosetDecl poset;
  FieldDecl field;
  AlgebraDecl algebra;
  std::vector<ModuleDecl> modules;
  std::vector<Statement> body;
  friend bool operator==(const SessionSpec&, const SessionSpec&) = default;
};

/// Throws ParseError with line and column. Syntax, unknown identifiers,
/// arity mismatches and inhomogeneous relations are all reported this way.
SessionSpec parse_session(const std::string& text);
/// Canonical text; parse_session(print_session(s)) == s.
std::string print_session(const SessionSpec& spec);

/// Degree in the poset's own spelling: "(1,0)", "a", "(3,b)".
Index parse_index(const Poset& poset, const std::string& text);
std::string format_combination(const Combination& c);

// ---------------------------------------------------------------- commands

/// "M", "P(i)" (free at i), "S(i)" (simple at i) or "M@i" (M placed at i).
struct ModuleRef {
  std::string name;
  std::optional<Index> free_at;
  std::optional<Index> simple_at;
  std::optional<Index> placed_at;
  std::optional<Index> index() const;
};

struct Command {
  std::string verb;
  /// Sub-command of `check`.
  std::string check;
  std::vector<ModuleRef> modules;
  std::vector<Index> degrees;
  std::optional<WindowDecl> window;
  bool weak = false;
};

const std::vector<std::string>& command_verbs();
const std::vector<std::string>& check_kinds();

/// Throws ParseError (line 0, column = argument position) on bad arguments.
Command parse_command(const std::vector<std::string>& args, const Poset& poset,
                      const std::vector<std::string>& module_names);

/// Splits on whitespace outside parentheses and brackets.
std::vector<std::string> split_args(const std::string& text);

}  // namespace ialg
