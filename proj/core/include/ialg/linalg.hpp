#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ialg/field.hpp"

namespace ialg {

/// Sparse vector: entries sorted by column, no explicit zeros.
using Vec = std::vector<std::pair<std::uint32_t, Scalar>>;

Vec unit_vec(std::uint32_t col);
/// y += a * x
void axpy(const Field& f, Vec& y, const Scalar& a, const Vec& x);
Vec scaled(const Field& f, const Scalar& a, const Vec& x);
Vec added(const Field& f, const Vec& x, const Vec& y);
/// Coefficient at col, zero when absent.
Scalar coeff(const Vec& v, std::uint32_t col);
/// Moves every column by offset (block embedding).
Vec shifted(const Vec& v, std::uint32_t offset);
/// Builds a sparse vector from possibly unsorted, possibly repeated entries.
Vec from_entries(const Field& f, std::vector<std::pair<std::uint32_t, Scalar>> entries);

/// Fully reduced row echelon basis of a subspace of F^n.
///
/// The pivot of every row is its largest column, so the non-pivot columns
/// are exactly the greedy (smallest-first) complement of the subspace. When
/// tracking is enabled each row also records how it is built from the
/// inserted vectors, which gives coordinates in the inserted family and the
/// linear relations among the inserted vectors.
class Echelon {
 public:
  Echelon(const Field& f, std::size_t ambient_dim, bool track = false);

  const Field& field() const { return field_; }
  std::size_t ambient_dim() const { return ambient_; }
  std::size_t rank() const { return rows_.size(); }

  /// Inserts v (tagged with the running insertion count). Returns true when
  /// the rank grew; otherwise, under tracking, the relation found is stored
  /// and reported by relations().
  bool insert(const Vec& v);

  Vec reduce(const Vec& v) const;
  bool contains(const Vec& v) const { return reduce(v).empty(); }

  /// Coordinates of v in terms of the inserted vectors, if v is in the span.
  /// Requires tracking.
  std::optional<Vec> express(const Vec& v) const;

  bool is_pivot(std::uint32_t col) const { return rows_.count(col) != 0; }
  std::vector<std::uint32_t> pivots() const;
  std::vector<std::uint32_t> non_pivots() const;
  /// Rows in increasing pivot order.
  std::vector<Vec> basis() const;

  /// Relations among inserted vectors, one per dependent insertion:
  /// sum_k c_k v_k = 0. Requires tracking.
  const std::vector<Vec>& relations() const { return relations_; }
  std::size_t inserted() const { return inserted_; }

 private:
  struct Row {
    Vec vec;
    Vec combo;
  };

  void reduce_in_place(Vec& v, Vec* combo) const;

  Field field_;
  std::size_t ambient_;
  bool track_;
  std::map<std::uint32_t, Row> rows_;
  std::vector<Vec> relations_;
  std::size_t inserted_ = 0;
};

/// Kernel of the linear map sending basis vector k to images[k].
std::vector<Vec> kernel_basis(const Field& f, const std::vector<Vec>& images,
                              std::size_t codomain_dim);

std::size_t rank_of(const Field& f, const std::vector<Vec>& vecs, std::size_t ambient_dim);

/// Quotient F^n / U with the non-pivot columns of U as basis.
class Quotient {
 public:
  explicit Quotient(Echelon relations);

  std::size_t ambient_dim() const { return relations_.ambient_dim(); }
  std::size_t dim() const { return basis_cols_.size(); }
  const Echelon& relations() const { return relations_; }
  /// Ambient column of quotient basis vector k.
  std::uint32_t basis_col(std::size_t k) const { return basis_cols_[k]; }
  const std::vector<std::uint32_t>& basis_cols() const { return basis_cols_; }

  Vec project(const Vec& ambient) const;
  Vec lift(const Vec& coords) const;

 private:
  Echelon relations_;
  std::vector<std::uint32_t> basis_cols_;
  std::vector<std::int64_t> coord_of_col_;
};

}  // namespace ialg
