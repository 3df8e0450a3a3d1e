#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ialg/outcome.hpp"

namespace ialg {

/// A poset element as a flat coordinate vector. Lattice factors contribute
/// their integer coordinates, finite factors the element's rank in the fixed
/// linear extension. Equality and hashing are structural; order comparisons
/// go through the owning Poset.
class Index {
 public:
  Index() = default;
  explicit Index(std::vector<std::int64_t> coords) : coords_(std::move(coords)) {}
  Index(std::initializer_list<std::int64_t> coords) : coords_(coords) {}

  std::size_t size() const { return coords_.size(); }
  std::int64_t operator[](std::size_t k) const { return coords_[k]; }
  std::int64_t& operator[](std::size_t k) { return coords_[k]; }
  const std::vector<std::int64_t>& coords() const { return coords_; }

  Index operator+(const Index& o) const;
  Index operator-(const Index& o) const;

  friend bool operator==(const Index&, const Index&) = default;
  /// Structural (lexicographic) order for use as a map key.
  friend auto operator<=>(const Index&, const Index&) = default;

 private:
  std::vector<std::int64_t> coords_;
};

struct IndexHash {
  std::size_t operator()(const Index& i) const noexcept;
};

std::string format_coords(const Index& i);

class Poset;
using PosetPtr = std::shared_ptr<const Poset>;

/// Locally finite directed poset: Z^r with the product order, a finite
/// explicit poset, or a direct product of two of these.
class Poset : public std::enable_shared_from_this<Poset> {
 public:
  enum class Kind { IntegerLattice, FiniteExplicit, DirectProduct };

  static PosetPtr lattice(std::size_t rank);
  /// Builds the order generated by the given strict relations without
  /// validating it; see validate().
  static PosetPtr finite_unchecked(std::vector<std::string> names,
                                   std::vector<std::pair<std::string, std::string>> less_than);
  /// As finite_unchecked, but throws PosetError when validate() does not verify.
  static PosetPtr finite(std::vector<std::string> names,
                         std::vector<std::pair<std::string, std::string>> less_than);
  static PosetPtr product(PosetPtr left, PosetPtr right);

  Kind kind() const { return kind_; }
  std::size_t arity() const { return arity_; }
  bool is_lattice() const { return kind_ == Kind::IntegerLattice; }
  const Poset& left() const { return *left_; }
  const Poset& right() const { return *right_; }
  PosetPtr left_ptr() const { return left_; }
  PosetPtr right_ptr() const { return right_; }

  /// Finite kind: element count and names in linear-extension order.
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::int64_t> id_of(const std::string& name) const;
  /// Generating relations as declared, for printing.
  const std::vector<std::pair<std::string, std::string>>& declared_relations() const {
    return declared_;
  }

  /// True when the flat coordinate k belongs to a finite factor.
  bool is_finite_coord(std::size_t k) const { return finite_coord_[k] != nullptr; }
  /// Order on a single coordinate.
  bool coord_leq(std::size_t k, std::int64_t a, std::int64_t b) const;
  const Poset* finite_factor_of(std::size_t k) const { return finite_coord_[k]; }

  bool contains(const Index& i) const;
  /// Throws PosetError when either element is not in the poset.
  bool leq(const Index& i, const Index& j) const;
  bool less(const Index& i, const Index& j) const { return leq(i, j) && !(i == j); }
  bool comparable(const Index& i, const Index& j) const { return leq(i, j) || leq(j, i); }

  /// [i, j] in linear-extension order; empty unless i <= j.
  std::vector<Index> interval(const Index& i, const Index& j) const;
  std::size_t interval_size(const Index& i, const Index& j) const;

  /// Componentwise max on lattice factors, least common upper bound in the
  /// linear extension on finite factors. Throws PosetError if none exists.
  Index upper_bound(const Index& i, const Index& j) const;

  /// Strict order of the fixed linear extension: coordinate sum, then
  /// lexicographic coordinates.
  static bool precedes(const Index& i, const Index& j);

  std::string format(const Index& i) const;
  /// Declaration text: "zlattice 2", "finite {a,b} {a<b}", "product (..) (..)".
  std::string describe() const;

  /// Exhaustive partial-order and directedness check for finite factors,
  /// structural Verified otherwise.
  CheckOutcome validate() const;

 private:
  Poset() = default;
  void finish_coordinates();
  bool leq_range(const std::int64_t* a, const std::int64_t* b) const;
  std::vector<std::vector<std::int64_t>> interval_coords(const std::int64_t* a,
                                                         const std::int64_t* b) const;
  bool upper_bound_range(const std::int64_t* a, const std::int64_t* b,
                         std::int64_t* out) const;
  void format_coords_into(const std::int64_t* a, std::vector<std::string>& out) const;

  Kind kind_ = Kind::IntegerLattice;
  std::size_t arity_ = 0;
  PosetPtr left_, right_;
  std::vector<std::string> names_;
  std::vector<std::pair<std::string, std::string>> declared_;
  std::vector<std::vector<char>> le_;
  std::optional<std::pair<std::string, std::string>> antisymmetry_witness_;
  std::vector<const Poset*> finite_coord_;
};

constexpr std::size_t kDefaultWindowLimit = 10000;

/// Finite order-convex subset of a poset: an interval [lo, hi] or an
/// explicit element set.
class Window {
 public:
  /// Throws PosetError unless lo <= hi, ResourceLimitError beyond max_elements.
  static Window box(PosetPtr poset, Index lo, Index hi,
                    std::size_t max_elements = kDefaultWindowLimit);
  /// Throws PosetError unless the set is order-convex.
  static Window from_elements(PosetPtr poset, std::vector<Index> elements);

  const Poset& poset() const { return *poset_; }
  PosetPtr poset_ptr() const { return poset_; }
  bool is_box() const { return box_; }
  const Index& lo() const { return lo_; }
  const Index& hi() const { return hi_; }

  /// Linear-extension order, deterministic.
  const std::vector<Index>& elements() const { return *elements_; }
  std::size_t size() const { return elements_->size(); }
  bool contains(const Index& i) const { return positions_->count(i) != 0; }
  std::optional<std::size_t> position(const Index& i) const;

  /// { j in window : j > d }, d need not lie in the window.
  std::vector<Index> strict_upper_set(const Index& d) const;

  std::string describe() const;

 private:
  Window() = default;
  void index_elements();

  PosetPtr poset_;
  bool box_ = false;
  Index lo_, hi_;
  std::shared_ptr<const std::vector<Index>> elements_;
  std::shared_ptr<const std::unordered_map<Index, std::size_t, IndexHash>> positions_;
};

/// Nested windows used by the stabilization policy.
using WindowChain = std::vector<Window>;

}  // namespace ialg
