#include "ialg/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace ialg {

Vec unit_vec(std::uint32_t col) { return Vec{{col, Scalar(1)}}; }

void axpy(const Field& f, Vec& y, const Scalar& a, const Vec& x) {
  if (Field::is_zero(a) || x.empty()) return;
  Vec out;
  out.reserve(y.size() + x.size());
  auto iy = y.begin();
  auto ix = x.begin();
  while (iy != y.end() || ix != x.end()) {
    if (ix == x.end() || (iy != y.end() && iy->first < ix->first)) {
      out.push_back(std::move(*iy));
      ++iy;
    } else if (iy == y.end() || ix->first < iy->first) {
      out.emplace_back(ix->first, f.mul(a, ix->second));
      ++ix;
    } else {
      Scalar s = f.add(iy->second, f.mul(a, ix->second));
      if (!Field::is_zero(s)) out.emplace_back(iy->first, std::move(s));
      ++iy;
      ++ix;
    }
  }
  y = std::move(out);
}

Vec scaled(const Field& f, const Scalar& a, const Vec& x) {
  Vec out;
  if (Field::is_zero(a)) return out;
  out.reserve(x.size());
  for (const auto& [c, v] : x) out.emplace_back(c, f.mul(a, v));
  return out;
}

Vec added(const Field& f, const Vec& x, const Vec& y) {
  Vec out = x;
  axpy(f, out, f.one(), y);
  return out;
}

Scalar coeff(const Vec& v, std::uint32_t col) {
  auto it = std::lower_bound(v.begin(), v.end(), col,
                             [](const auto& e, std::uint32_t c) { return e.first < c; });
  if (it != v.end() && it->first == col) return it->second;
  return Scalar(0);
}

Vec shifted(const Vec& v, std::uint32_t offset) {
  Vec out = v;
  for (auto& e : out) e.first += offset;
  return out;
}

Vec from_entries(const Field& f, std::vector<std::pair<std::uint32_t, Scalar>> entries) {
  std::stable_sort(entries.begin(), entries.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  Vec out;
  for (auto& [c, v] : entries) {
    if (!out.empty() && out.back().first == c) {
      out.back().second = f.add(out.back().second, v);
      if (Field::is_zero(out.back().second)) out.pop_back();
    } else if (!Field::is_zero(v)) {
      out.emplace_back(c, std::move(v));
    }
  }
  return out;
}

Echelon::Echelon(const Field& f, std::size_t ambient_dim, bool track)
    : field_(f), ambient_(ambient_dim), track_(track) {}

void Echelon::reduce_in_place(Vec& v, Vec* combo) const {
  // Rows are fully reduced, so one subtraction per pivot column present in
  // the original vector clears it and introduces only non-pivot columns.
  std::vector<std::pair<std::uint32_t, Scalar>> hits;
  for (const auto& [c, a] : v) {
    if (rows_.count(c)) hits.emplace_back(c, a);
  }
  for (const auto& [c, a] : hits) {
    const Row& row = rows_.at(c);
    const Scalar minus = field_.neg(a);
    axpy(field_, v, minus, row.vec);
    if (combo) axpy(field_, *combo, minus, row.combo);
  }
}

Vec Echelon::reduce(const Vec& v) const {
  Vec out = v;
  reduce_in_place(out, nullptr);
  return out;
}

bool Echelon::insert(const Vec& v) {
  const std::uint32_t tag = static_cast<std::uint32_t>(inserted_++);
  Vec r = v;
  Vec combo;
  if (track_) combo = unit_vec(tag);
  reduce_in_place(r, track_ ? &combo : nullptr);
  if (r.empty()) {
    if (track_) relations_.push_back(std::move(combo));
    return false;
  }
  const std::uint32_t pivot = r.back().first;
  if (pivot >= ambient_) throw std::out_of_range("vector exceeds ambient dimension");
  const Scalar inv = field_.inv(r.back().second);
  r = scaled(field_, inv, r);
  if (track_) combo = scaled(field_, inv, combo);
  for (auto& [p, row] : rows_) {
    const Scalar a = coeff(row.vec, pivot);
    if (Field::is_zero(a)) continue;
    const Scalar minus = field_.neg(a);
    axpy(field_, row.vec, minus, r);
    if (track_) axpy(field_, row.combo, minus, combo);
  }
  rows_.emplace(pivot, Row{std::move(r), std::move(combo)});
  return true;
}

std::optional<Vec> Echelon::express(const Vec& v) const {
  if (!track_) throw std::logic_error("Echelon::express requires tracking");
  Vec r = v;
  Vec combo;
  reduce_in_place(r, &combo);
  if (!r.empty()) return std::nullopt;
  return scaled(field_, field_.neg(field_.one()), combo);
}

std::vector<std::uint32_t> Echelon::pivots() const {
  std::vector<std::uint32_t> out;
  out.reserve(rows_.size());
  for (const auto& [p, row] : rows_) out.push_back(p);
  return out;
}

std::vector<std::uint32_t> Echelon::non_pivots() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t c = 0; c < ambient_; ++c) {
    if (!rows_.count(c)) out.push_back(c);
  }
  return out;
}

std::vector<Vec> Echelon::basis() const {
  std::vector<Vec> out;
  out.reserve(rows_.size());
  for (const auto& [p, row] : rows_) out.push_back(row.vec);
  return out;
}

std::vector<Vec> kernel_basis(const Field& f, const std::vector<Vec>& images,
                              std::size_t codomain_dim) {
  Echelon e(f, codomain_dim, true);
  for (const auto& img : images) e.insert(img);
  return e.relations();
}

std::size_t rank_of(const Field& f, const std::vector<Vec>& vecs, std::size_t ambient_dim) {
  Echelon e(f, ambient_dim);
  for (const auto& v : vecs) e.insert(v);
  return e.rank();
}

Quotient::Quotient(Echelon relations) : relations_(std::move(relations)) {
  basis_cols_ = relations_.non_pivots();
  coord_of_col_.assign(relations_.ambient_dim(), -1);
  for (std::size_t k = 0; k < basis_cols_.size(); ++k) {
    coord_of_col_[basis_cols_[k]] = static_cast<std::int64_t>(k);
  }
}

Vec Quotient::project(const Vec& ambient) const {
  Vec r = relations_.reduce(ambient);
  for (auto& e : r) e.first = static_cast<std::uint32_t>(coord_of_col_[e.first]);
  return r;
}

Vec Quotient::lift(const Vec& coords) const {
  Vec out = coords;
  for (auto& e : out) e.first = basis_cols_[e.first];
  return out;
}

}  // namespace ialg
