#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ialg/field.hpp"
#include "ialg/linalg.hpp"
#include "ialg/outcome.hpp"
#include "ialg/poset.hpp"

namespace ialg {

/// Effect of a generator on one flat coordinate: a translation, or a move
/// between two fixed values (explicit arrows, finite factors).
struct CoordStep {
  enum class Kind { Add, Move };
  Kind kind = Kind::Add;
  std::int64_t delta = 0;
  std::int64_t from = 0;
  std::int64_t to = 0;

  static CoordStep add(std::int64_t d) { return {Kind::Add, d, 0, 0}; }
  static CoordStep move(std::int64_t f, std::int64_t t) { return {Kind::Move, 0, f, t}; }
  friend bool operator==(const CoordStep&, const CoordStep&) = default;
};

/// Degree data of a generator or relation: a partial map on the poset.
class Step {
 public:
  Step() = default;
  explicit Step(std::vector<CoordStep> ops) : ops_(std::move(ops)) {}
  static Step shift(const Index& delta);
  static Step arrow(const Index& source, const Index& target);

  const std::vector<CoordStep>& ops() const { return ops_; }
  std::size_t arity() const { return ops_.size(); }
  bool is_shift() const;
  /// The translation vector of a pure shift.
  Index shift_vector() const;

  std::optional<Index> apply(const Index& i) const;
  std::optional<Index> preimage(const Index& j) const;
  /// This step followed by next; nullopt when the composite applies nowhere.
  std::optional<Step> then(const Step& next) const;

  /// Throws DegreeError unless the step is well formed for the poset and
  /// strictly increases every index it applies to.
  void validate_positive(const Poset& poset) const;

  std::string format(const Poset& poset) const;
  friend bool operator==(const Step&, const Step&) = default;

 private:
  std::vector<CoordStep> ops_;
};

struct Generator {
  std::string name;
  Step degree;
};

/// A path as a sequence of generator ids.
using Word = std::vector<std::uint16_t>;

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

struct Term {
  Scalar coeff;
  Word word;
};

/// Homogeneous relation, imposed at every source index where its degree applies.
struct Relation {
  Step degree;
  std::vector<Term> terms;
};

/// An element of A_ij together with its degree pair.
struct Arrow {
  Index source;
  Index target;
  Vec element;
  std::string label;
};

/// Connected, positively I-indexed algebra with exactly computable components.
class IndexedAlgebra {
 public:
  virtual ~IndexedAlgebra() = default;

  virtual const std::string& name() const = 0;
  virtual PosetPtr poset_ptr() const = 0;
  const Poset& poset() const { return *poset_ptr(); }
  virtual const Field& field() const = 0;

  virtual std::size_t dim(const Index& i, const Index& j) const = 0;
  virtual std::string basis_label(const Index& i, const Index& j, std::size_t k) const = 0;
  /// Product of basis element p of A_ij with basis element q of A_jl.
  virtual Vec multiply_basis(const Index& i, const Index& j, const Index& l, std::size_t p,
                             std::size_t q) const = 0;
  /// Elements of the maximal ideal ending at target that generate it as a
  /// two-sided ideal (generators, or indecomposables for table algebras).
  virtual std::vector<Arrow> arrows_into(const Index& target) const = 0;

  /// Bilinear product A_ij x A_jl -> A_il in basis coordinates.
  Vec multiply(const Index& i, const Index& j, const Index& l, const Vec& a, const Vec& b) const;
};

using AlgebraPtr = std::shared_ptr<const IndexedAlgebra>;

struct AlgebraElement {
  Index source;
  Index target;
  Vec coords;
};

/// Throws DegreeError unless a.target == b.source.
AlgebraElement multiply(const IndexedAlgebra& a, const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement local_unit(const Index& i);

struct ComponentBasis {
  Index source;
  Index target;
  std::vector<std::string> labels;
  std::size_t dimension() const { return labels.size(); }
};

ComponentBasis component_basis(const IndexedAlgebra& a, const Index& i, const Index& j);
/// component_basis when i < j, zero otherwise.
ComponentBasis maximal_ideal_component(const IndexedAlgebra& a, const Index& i, const Index& j);

struct AlgebraLimits {
  std::size_t max_paths = 1'000'000;
  std::size_t max_component_dim = 10'000;
};

/// Algebra given by generators and homogeneous relations.
///
/// A_ij is the span of composable paths i -> j modulo the degree (i,j) slice
/// of the two-sided relation ideal. The slice is assembled from the slices
/// of shorter intervals (left and right multiples by a generator plus the
/// relations of degree exactly (i,j)) and reduced to echelon form; the basis
/// is the greedy deglex complement. Components are memoized, keyed by j - i
/// for translation-invariant presentations.
class PresentedAlgebra : public IndexedAlgebra {
 public:
  enum class Kind { Invariant, Explicit };

  /// Throws DegreeError on non-positive generators or inhomogeneous relations.
  PresentedAlgebra(std::string name, PosetPtr poset, Field field, std::vector<Generator> generators,
                   std::vector<Relation> relations, AlgebraLimits limits = {});

  const std::string& name() const override { return name_; }
  PosetPtr poset_ptr() const override { return poset_; }
  const Field& field() const override { return field_; }
  Kind kind() const { return kind_; }
  const std::vector<Generator>& generators() const { return generators_; }
  const std::vector<Relation>& relations() const { return relations_; }
  std::optional<std::uint16_t> generator_id(const std::string& name) const;
  const AlgebraLimits& limits() const { return limits_; }

  std::size_t dim(const Index& i, const Index& j) const override;
  std::string basis_label(const Index& i, const Index& j, std::size_t k) const override;
  Vec multiply_basis(const Index& i, const Index& j, const Index& l, std::size_t p,
                     std::size_t q) const override;
  std::vector<Arrow> arrows_into(const Index& target) const override;

  /// Normal-form basis words of A_ij, deglex.
  std::vector<Word> basis_words(const Index& i, const Index& j) const;
  /// All composable paths i -> j, deglex.
  std::vector<Word> paths(const Index& i, const Index& j) const;
  /// Coordinates of a path over the normal-form basis. Throws DegreeError if
  /// the word is not a path from i to j.
  Vec normal_form(const Index& i, const Index& j, const Word& w) const;
  /// Composite degree of a word; nullopt when it is not composable anywhere.
  std::optional<Step> word_degree(const Word& w) const;
  std::string format_word(const Word& w) const;

 private:
  struct ComponentData {
    std::vector<Word> paths;
    std::unordered_map<Word, std::uint32_t, WordHash> index;
    std::unique_ptr<Quotient> quotient;
  };
  using DataPtr = std::shared_ptr<const ComponentData>;

  DataPtr data(const Index& i, const Index& j) const;
  DataPtr compute(const Index& i, const Index& j) const;
  std::pair<Index, Index> cache_key(const Index& i, const Index& j) const;

  std::string name_;
  PosetPtr poset_;
  Field field_;
  std::vector<Generator> generators_;
  std::vector<Relation> relations_;
  AlgebraLimits limits_;
  Kind kind_;
  bool single_char_names_ = true;

  mutable std::mutex cache_mutex_;
  mutable std::map<std::pair<Index, Index>, DataPtr> cache_;
};

/// Algebra given by component dimensions and structure constants over a
/// finite poset.
class StructureConstantAlgebra : public IndexedAlgebra {
 public:
  struct Component {
    std::vector<std::string> labels;
  };
  using Table = std::vector<std::vector<Vec>>;

  StructureConstantAlgebra(std::string name, PosetPtr poset, Field field,
                           std::map<std::pair<std::int64_t, std::int64_t>, Component> components,
                           std::map<std::tuple<std::int64_t, std::int64_t, std::int64_t>, Table> products);

  const std::string& name() const override { return name_; }
  PosetPtr poset_ptr() const override { return poset_; }
  const Field& field() const override { return field_; }

  std::size_t dim(const Index& i, const Index& j) const override;
  std::string basis_label(const Index& i, const Index& j, std::size_t k) const override;
  Vec multiply_basis(const Index& i, const Index& j, const Index& l, std::size_t p,
                     std::size_t q) const override;
  std::vector<Arrow> arrows_into(const Index& target) const override;

 private:
  std::string name_;
  PosetPtr poset_;
  Field field_;
  std::map<std::pair<std::int64_t, std::int64_t>, Component> components_;
  std::map<std::tuple<std::int64_t, std::int64_t, std::int64_t>, Table> products_;
  mutable std::mutex arrow_mutex_;
  mutable std::map<Index, std::vector<Arrow>> arrow_cache_;
};

/// A connected Z^r-graded ring given by generators of positive degree and
/// homogeneous relations.
struct GradedRingPresentation {
  std::string name;
  std::size_t rank = 1;
  Field field = Field::rationals();
  std::vector<std::pair<std::string, std::vector<std::int64_t>>> generators;
  /// Each relation as (degree, terms over generator ids).
  std::vector<std::pair<std::vector<std::int64_t>, std::vector<Term>>> relations;
};

/// The delooping B_G S on the Z^r lattice: (B_G S)_{g,h} = S_{h-g}.
std::shared_ptr<const PresentedAlgebra> from_graded_ring(const GradedRingPresentation& s,
                                                         AlgebraLimits limits = {});

/// dim A_ij as the rank of the products A_ir A_rj (i < r < j) together with
/// the degree-(i,j) members of a generating set of P_{i,>i}. Throws
/// DegreeError when the generating set does not start at i.
std::size_t dim_via_induction(const IndexedAlgebra& a, const Index& i, const Index& j,
                              const std::vector<AlgebraElement>& star_generators);

/// Verified for presented algebras (positive steps leave only e_i on the
/// diagonal); table algebras are checked against their diagonal dimensions.
CheckOutcome check_connected(const IndexedAlgebra& a, const std::vector<Index>& indices = {});

}  // namespace ialg
