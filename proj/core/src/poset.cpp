#include "ialg/poset.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "ialg/errors.hpp"

namespace ialg {

Index Index::operator+(const Index& o) const {
  Index out = *this;
  for (std::size_t k = 0; k < coords_.size(); ++k) out.coords_[k] += o.coords_[k];
  return out;
}

Index Index::operator-(const Index& o) const {
  Index out = *this;
  for (std::size_t k = 0; k < coords_.size(); ++k) out.coords_[k] -= o.coords_[k];
  return out;
}

std::size_t IndexHash::operator()(const Index& i) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (auto c : i.coords()) {
    h ^= static_cast<std::size_t>(c) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

std::string format_coords(const Index& i) {
  std::string s = "(";
  for (std::size_t k = 0; k < i.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(i[k]);
  }
  return s + ")";
}

namespace {

/// Two elements of a finite factor with no common upper bound, or a cycle
/// in the declared relations.
class PosetWitnessCertificate : public Certificate {
 public:
  PosetWitnessCertificate(PosetPtr poset, std::string a, std::string b, bool cycle)
      : poset_(std::move(poset)), a_(std::move(a)), b_(std::move(b)), cycle_(cycle) {}

  std::string kind() const override { return cycle_ ? "poset-cycle" : "poset-no-upper-bound"; }

  nlohmann::json to_json() const override {
    return {{"elements", {a_, b_}}, {"poset", poset_->describe()}};
  }

  ReplayResult replay() const override {
    const auto ia = poset_->id_of(a_);
    const auto ib = poset_->id_of(b_);
    if (!ia || !ib) return {false, "unknown witness element"};
    if (cycle_) {
      // Rebuild reachability from the declared relations only.
      const auto& names = poset_->names();
      const std::size_t n = names.size();
      std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
      for (std::size_t k = 0; k < n; ++k) reach[k][k] = 1;
      for (const auto& [x, y] : poset_->declared_relations()) {
        reach[*poset_->id_of(x)][*poset_->id_of(y)] = 1;
      }
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            if (reach[i][k] && reach[k][j]) reach[i][j] = 1;
      const bool ok = *ia != *ib && reach[*ia][*ib] && reach[*ib][*ia];
      return {ok, ok ? "distinct elements below each other" : "no cycle through witness"};
    }
    for (std::size_t u = 0; u < poset_->size(); ++u) {
      const Index iu{static_cast<std::int64_t>(u)};
      if (poset_->leq(Index{*ia}, iu) && poset_->leq(Index{*ib}, iu)) {
        return {false, "common upper bound " + poset_->names()[u]};
      }
    }
    return {true, "no common upper bound"};
  }

 private:
  PosetPtr poset_;
  std::string a_, b_;
  bool cycle_;
};

}  // namespace

PosetPtr Poset::lattice(std::size_t rank) {
  if (rank == 0) throw PosetError("lattice rank must be at least 1");
  auto p = std::shared_ptr<Poset>(new Poset());
  p->kind_ = Kind::IntegerLattice;
  p->arity_ = rank;
  p->finish_coordinates();
  return p;
}

PosetPtr Poset::finite_unchecked(std::vector<std::string> names,
                                 std::vector<std::pair<std::string, std::string>> less_than) {
  if (names.empty()) throw PosetError("finite poset needs at least one element");
  const std::size_t n = names.size();
  std::unordered_map<std::string, std::size_t> id;
  for (std::size_t k = 0; k < n; ++k) {
    if (!id.emplace(names[k], k).second) throw PosetError("duplicate element " + names[k]);
  }
  std::vector<std::vector<char>> le(n, std::vector<char>(n, 0));
  for (std::size_t k = 0; k < n; ++k) le[k][k] = 1;
  for (const auto& [a, b] : less_than) {
    auto ia = id.find(a), ib = id.find(b);
    if (ia == id.end()) throw PosetError("unknown element " + a);
    if (ib == id.end()) throw PosetError("unknown element " + b);
    le[ia->second][ib->second] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (le[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (le[k][j]) le[i][j] = 1;

  auto p = std::shared_ptr<Poset>(new Poset());
  p->kind_ = Kind::FiniteExplicit;
  p->arity_ = 1;
  p->declared_ = std::move(less_than);

  for (std::size_t i = 0; i < n && !p->antisymmetry_witness_; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (le[i][j] && le[j][i]) {
        p->antisymmetry_witness_ = std::make_pair(names[i], names[j]);
        break;
      }

  // Topological order refining insertion order: repeatedly take the earliest
  // inserted element all of whose strict predecessors are placed.
  std::vector<std::size_t> order;
  if (!p->antisymmetry_witness_) {
    std::vector<char> placed(n, 0);
    while (order.size() < n) {
      for (std::size_t c = 0; c < n; ++c) {
        if (placed[c]) continue;
        bool ready = true;
        for (std::size_t d = 0; d < n && ready; ++d) {
          if (d != c && le[d][c] && !placed[d]) ready = false;
        }
        if (ready) {
          placed[c] = 1;
          order.push_back(c);
          break;
        }
      }
    }
  } else {
    order.resize(n);
    std::iota(order.begin(), order.end(), 0);
  }
  p->names_.resize(n);
  p->le_.assign(n, std::vector<char>(n, 0));
  for (std::size_t a = 0; a < n; ++a) {
    p->names_[a] = names[order[a]];
    for (std::size_t b = 0; b < n; ++b) p->le_[a][b] = le[order[a]][order[b]];
  }
  p->finish_coordinates();
  return p;
}

PosetPtr Poset::finite(std::vector<std::string> names,
                       std::vector<std::pair<std::string, std::string>> less_than) {
  auto p = finite_unchecked(std::move(names), std::move(less_than));
  const CheckOutcome v = p->validate();
  if (!v.verified()) throw PosetError("invalid finite poset: " + v.note);
  return p;
}

PosetPtr Poset::product(PosetPtr left, PosetPtr right) {
  if (!left || !right) throw PosetError("product of null posets");
  auto p = std::shared_ptr<Poset>(new Poset());
  p->kind_ = Kind::DirectProduct;
  p->arity_ = left->arity() + right->arity();
  p->left_ = std::move(left);
  p->right_ = std::move(right);
  p->finish_coordinates();
  return p;
}

void Poset::finish_coordinates() {
  finite_coord_.clear();
  switch (kind_) {
    case Kind::IntegerLattice: finite_coord_.assign(arity_, nullptr); break;
    case Kind::FiniteExplicit: finite_coord_.assign(1, this); break;
    case Kind::DirectProduct:
      finite_coord_ = left_->finite_coord_;
      finite_coord_.insert(finite_coord_.end(), right_->finite_coord_.begin(),
                           right_->finite_coord_.end());
      break;
  }
}

std::optional<std::int64_t> Poset::id_of(const std::string& name) const {
  for (std::size_t k = 0; k < names_.size(); ++k) {
    if (names_[k] == name) return static_cast<std::int64_t>(k);
  }
  return std::nullopt;
}

bool Poset::coord_leq(std::size_t k, std::int64_t a, std::int64_t b) const {
  const Poset* f = finite_coord_[k];
  if (!f) return a <= b;
  return f->le_[a][b] != 0;
}

bool Poset::contains(const Index& i) const {
  if (i.size() != arity_) return false;
  for (std::size_t k = 0; k < arity_; ++k) {
    if (const Poset* f = finite_coord_[k]; f && (i[k] < 0 || i[k] >= std::int64_t(f->size())))
      return false;
  }
  return true;
}

bool Poset::leq_range(const std::int64_t* a, const std::int64_t* b) const {
  switch (kind_) {
    case Kind::IntegerLattice:
      for (std::size_t k = 0; k < arity_; ++k)
        if (a[k] > b[k]) return false;
      return true;
    case Kind::FiniteExplicit: return le_[a[0]][b[0]] != 0;
    case Kind::DirectProduct: {
      const std::size_t la = left_->arity();
      return left_->leq_range(a, b) && right_->leq_range(a + la, b + la);
    }
  }
  return false;
}

bool Poset::leq(const Index& i, const Index& j) const {
  if (!contains(i)) throw PosetError("element " + format_coords(i) + " not in poset");
  if (!contains(j)) throw PosetError("element " + format_coords(j) + " not in poset");
  return leq_range(i.coords().data(), j.coords().data());
}

std::vector<std::vector<std::int64_t>> Poset::interval_coords(const std::int64_t* a,
                                                              const std::int64_t* b) const {
  std::vector<std::vector<std::int64_t>> out;
  switch (kind_) {
    case Kind::IntegerLattice: {
      for (std::size_t k = 0; k < arity_; ++k)
        if (a[k] > b[k]) return out;
      std::vector<std::int64_t> cur(a, a + arity_);
      while (true) {
        out.push_back(cur);
        std::size_t k = arity_;
        while (k > 0) {
          --k;
          if (cur[k] < b[k]) {
            ++cur[k];
            for (std::size_t m = k + 1; m < arity_; ++m) cur[m] = a[m];
            break;
          }
          if (k == 0) return out;
        }
      }
    }
    case Kind::FiniteExplicit:
      for (std::size_t d = 0; d < names_.size(); ++d)
        if (le_[a[0]][d] && le_[d][b[0]]) out.push_back({std::int64_t(d)});
      return out;
    case Kind::DirectProduct: {
      const std::size_t la = left_->arity();
      auto ls = left_->interval_coords(a, b);
      auto rs = right_->interval_coords(a + la, b + la);
      for (const auto& l : ls)
        for (const auto& r : rs) {
          auto c = l;
          c.insert(c.end(), r.begin(), r.end());
          out.push_back(std::move(c));
        }
      return out;
    }
  }
  return out;
}

std::vector<Index> Poset::interval(const Index& i, const Index& j) const {
  if (!contains(i) || !contains(j)) throw PosetError("interval endpoint not in poset");
  std::vector<Index> out;
  for (auto& c : interval_coords(i.coords().data(), j.coords().data())) out.emplace_back(std::move(c));
  std::sort(out.begin(), out.end(), [](const Index& x, const Index& y) { return precedes(x, y); });
  return out;
}

std::size_t Poset::interval_size(const Index& i, const Index& j) const {
  if (!leq(i, j)) return 0;
  if (kind_ == Kind::IntegerLattice) {
    std::size_t n = 1;
    for (std::size_t k = 0; k < arity_; ++k) n *= static_cast<std::size_t>(j[k] - i[k] + 1);
    return n;
  }
  return interval(i, j).size();
}

bool Poset::upper_bound_range(const std::int64_t* a, const std::int64_t* b,
                              std::int64_t* out) const {
  switch (kind_) {
    case Kind::IntegerLattice:
      for (std::size_t k = 0; k < arity_; ++k) out[k] = std::max(a[k], b[k]);
      return true;
    case Kind::FiniteExplicit:
      for (std::size_t u = 0; u < names_.size(); ++u) {
        if (le_[a[0]][u] && le_[b[0]][u]) {
          out[0] = std::int64_t(u);
          return true;
        }
      }
      return false;
    case Kind::DirectProduct: {
      const std::size_t la = left_->arity();
      return left_->upper_bound_range(a, b, out) &&
             right_->upper_bound_range(a + la, b + la, out + la);
    }
  }
  return false;
}

Index Poset::upper_bound(const Index& i, const Index& j) const {
  if (!contains(i) || !contains(j)) throw PosetError("upper_bound argument not in poset");
  std::vector<std::int64_t> out(arity_);
  if (!upper_bound_range(i.coords().data(), j.coords().data(), out.data())) {
    throw PosetError("no common upper bound for " + format(i) + " and " + format(j) +
                     " (poset is not directed)");
  }
  return Index(std::move(out));
}

bool Poset::precedes(const Index& i, const Index& j) {
  const auto si = std::accumulate(i.coords().begin(), i.coords().end(), std::int64_t{0});
  const auto sj = std::accumulate(j.coords().begin(), j.coords().end(), std::int64_t{0});
  if (si != sj) return si < sj;
  return i.coords() < j.coords();
}

void Poset::format_coords_into(const std::int64_t* a, std::vector<std::string>& out) const {
  switch (kind_) {
    case Kind::IntegerLattice:
      for (std::size_t k = 0; k < arity_; ++k) out.push_back(std::to_string(a[k]));
      break;
    case Kind::FiniteExplicit:
      out.push_back(a[0] >= 0 && a[0] < std::int64_t(names_.size()) ? names_[a[0]]
                                                                    : "?" + std::to_string(a[0]));
      break;
    case Kind::DirectProduct:
      left_->format_coords_into(a, out);
      right_->format_coords_into(a + left_->arity(), out);
      break;
  }
}

std::string Poset::format(const Index& i) const {
  if (i.size() != arity_) return format_coords(i);
  std::vector<std::string> parts;
  format_coords_into(i.coords().data(), parts);
  if (kind_ == Kind::FiniteExplicit) return parts[0];
  std::string s = "(";
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (k) s += ",";
    s += parts[k];
  }
  return s + ")";
}

std::string Poset::describe() const {
  switch (kind_) {
    case Kind::IntegerLattice: return "zlattice " + std::to_string(arity_);
    case Kind::FiniteExplicit: {
      std::string s = "finite {";
      for (std::size_t k = 0; k < names_.size(); ++k) s += (k ? "," : "") + names_[k];
      s += "} {";
      for (std::size_t k = 0; k < declared_.size(); ++k)
        s += (k ? ", " : "") + declared_[k].first + "<" + declared_[k].second;
      return s + "}";
    }
    case Kind::DirectProduct:
      return "product (" + left_->describe() + ") (" + right_->describe() + ")";
  }
  return {};
}

CheckOutcome Poset::validate() const {
  CheckOutcome out;
  out.subject = "poset " + describe();
  switch (kind_) {
    case Kind::IntegerLattice:
      out.verdict = Verdict::Verified;
      out.note = "structural: product order on Z^" + std::to_string(arity_);
      return out;
    case Kind::DirectProduct: {
      std::vector<CheckOutcome> parts{left_->validate(), right_->validate()};
      out = aggregate(out.subject, std::move(parts));
      if (out.verified()) out.note = "structural: product of valid posets";
      return out;
    }
    case Kind::FiniteExplicit: break;
  }
  const PosetPtr self = shared_from_this();
  if (antisymmetry_witness_) {
    out.verdict = Verdict::Refuted;
    out.note = "antisymmetry fails for " + antisymmetry_witness_->first + ", " +
               antisymmetry_witness_->second;
    out.certificates.push_back(std::make_shared<PosetWitnessCertificate>(
        self, antisymmetry_witness_->first, antisymmetry_witness_->second, true));
    return out;
  }
  const std::size_t n = names_.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      bool bounded = false;
      for (std::size_t u = 0; u < n && !bounded; ++u) bounded = le_[a][u] && le_[b][u];
      if (!bounded) {
        out.verdict = Verdict::Refuted;
        out.note = "no upper bound for " + names_[a] + ", " + names_[b];
        out.certificates.push_back(
            std::make_shared<PosetWitnessCertificate>(self, names_[a], names_[b], false));
        return out;
      }
    }
  out.verdict = Verdict::Verified;
  out.note = "exhaustive: partial order, directed, finite";
  return out;
}

Window Window::box(PosetPtr poset, Index lo, Index hi, std::size_t max_elements) {
  if (!poset->leq(lo, hi)) {
    throw PosetError("window corners not ordered: " + poset->format(lo) + " vs " +
                     poset->format(hi));
  }
  if (poset->is_lattice()) {
    std::size_t n = 1;
    for (std::size_t k = 0; k < lo.size(); ++k) {
      n *= static_cast<std::size_t>(hi[k] - lo[k] + 1);
      if (n > max_elements) break;
    }
    if (n > max_elements) {
      throw ResourceLimitError("window has more than " + std::to_string(max_elements) +
                               " elements");
    }
  }
  Window w;
  w.poset_ = poset;
  w.box_ = true;
  w.lo_ = lo;
  w.hi_ = hi;
  w.elements_ = std::make_shared<const std::vector<Index>>(poset->interval(lo, hi));
  if (w.elements_->size() > max_elements) {
    throw ResourceLimitError("window has more than " + std::to_string(max_elements) +
                             " elements");
  }
  w.index_elements();
  return w;
}

Window Window::from_elements(PosetPtr poset, std::vector<Index> elements) {
  std::sort(elements.begin(), elements.end(),
            [](const Index& x, const Index& y) { return Poset::precedes(x, y); });
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  for (const auto& e : elements) {
    if (!poset->contains(e)) throw PosetError("window element not in poset");
  }
  std::unordered_map<Index, std::size_t, IndexHash> members;
  for (std::size_t k = 0; k < elements.size(); ++k) members.emplace(elements[k], k);
  for (const auto& a : elements)
    for (const auto& b : elements)
      if (poset->leq(a, b))
        for (const auto& d : poset->interval(a, b))
          if (!members.count(d)) {
            throw PosetError("window is not order-convex: " + poset->format(d) +
                             " lies between members");
          }
  Window w;
  w.poset_ = std::move(poset);
  w.elements_ = std::make_shared<const std::vector<Index>>(std::move(elements));
  w.index_elements();
  return w;
}

void Window::index_elements() {
  auto pos = std::make_shared<std::unordered_map<Index, std::size_t, IndexHash>>();
  for (std::size_t k = 0; k < elements_->size(); ++k) pos->emplace((*elements_)[k], k);
  positions_ = std::move(pos);
}

std::optional<std::size_t> Window::position(const Index& i) const {
  auto it = positions_->find(i);
  if (it == positions_->end()) return std::nullopt;
  return it->second;
}

std::vector<Index> Window::strict_upper_set(const Index& d) const {
  std::vector<Index> out;
  for (const auto& j : *elements_) {
    if (poset_->less(d, j)) out.push_back(j);
  }
  return out;
}

std::string Window::describe() const {
  if (box_) return "[" + poset_->format(lo_) + "," + poset_->format(hi_) + "]";
  std::string s = "{";
  for (std::size_t k = 0; k < elements_->size(); ++k) {
    s += (k ? "," : "") + poset_->format((*elements_)[k]);
  }
  return s + "}";
}

}  // namespace ialg
