#include "ialg/qgr.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "ialg/checks.hpp"
#include "ialg/errors.hpp"

namespace ialg {

// ---------------------------------------------------------------- probes

nlohmann::json ColimitProbe::to_json(const Poset& poset) const {
  auto steps = nlohmann::json::array();
  for (std::size_t k = 0; k < chain.size(); ++k) {
    nlohmann::json s = {{"cut", poset.format(chain[k])}, {"dim", dims[k]}};
    if (k > 0) s["transition_iso"] = static_cast<bool>(isomorphisms[k - 1]);
    steps.push_back(std::move(s));
  }
  nlohmann::json out = {{"subject", subject}, {"window", window}, {"steps", steps}, {"stabilized", stabilized}};
  if (stabilized) out["value_dim"] = terminal_dim();
  if (!note.empty()) out["note"] = note;
  return out;
}

CheckOutcome ColimitProbe::outcome() const {
  CheckOutcome out;
  out.subject = subject;
  out.window = window;
  out.verdict = stabilized ? Verdict::Verified : Verdict::Inconclusive;
  out.note = stabilized ? note : "colimit did not stabilize on the chain";
  out.detail["dims"] = dims;
  return out;
}

std::vector<Index> diagonal_chain(const Window& w, std::size_t length) {
  const Poset& poset = w.poset();
  std::vector<Index> out;
  Index d = w.lo();
  for (std::size_t k = 0; k <= length; ++k) {
    if (!w.contains(d)) {
      throw DegreeError("diagonal chain of length " + std::to_string(length) + " needs " + poset.format(d) +
                        ", outside " + w.describe());
    }
    if (k < length) out.push_back(d);
    bool moved = false;
    for (std::size_t c = 0; c < d.size(); ++c) {
      if (!poset.is_finite_coord(c)) {
        d[c] += 1;
        moved = true;
      }
    }
    if (!moved) throw DegreeError("no lattice coordinate to move the chain along");
  }
  return out;
}

bool stabilization_rule(const std::vector<bool>& isomorphisms) {
  const std::size_t n = isomorphisms.size();
  return n + 1 >= 4 && isomorphisms[n - 1] && isomorphisms[n - 2];
}

namespace {

void validate_chain(const std::vector<Index>& chain, const Window& w) {
  const Poset& poset = w.poset();
  if (chain.empty()) throw DegreeError("empty chain");
  for (std::size_t k = 0; k < chain.size(); ++k) {
    if (!w.contains(chain[k])) throw DegreeError("chain element " + poset.format(chain[k]) + " outside the window");
    if (k > 0 && !poset.less(chain[k - 1], chain[k])) throw DegreeError("chain not increasing");
  }
}

bool is_isomorphism(const Field& f, const std::vector<Vec>& columns, std::size_t source_dim, std::size_t target_dim) {
  return source_dim == target_dim && rank_of(f, columns, target_dim) == target_dim;
}

Vec combine_basis(const Field& f, const std::vector<Vec>& basis, const Vec& coords) {
  Vec out;
  for (const auto& [k, c] : coords) axpy(f, out, c, basis[k]);
  return out;
}

struct HomStep {
  WindowPresentation presentation;
  HomSpace hom;
};

/// Image of the tail generators of `to` under phi in Hom(from, target), as a
/// generator-image vector for `to`.
Vec restrict_along(const HomStep& from, const HomStep& to, const GradedModule& target, const Vec& phi) {
  Vec out;
  for (std::size_t l = 0; l < to.presentation.generators.size(); ++l) {
    const auto& g = to.presentation.generators[l];
    const auto amb = from.presentation.express(g.degree, g.coords);
    if (!amb) throw Error("tail generator outside the larger tail");
    const Vec x = from.presentation.presentation->project(g.degree, *amb);
    const Vec y = apply_hom(*from.presentation.presentation, target, from.hom, phi, g.degree, x);
    axpy(target.field(), out, target.field().one(), shifted(y, static_cast<std::uint32_t>(to.hom.offsets[l])));
  }
  return out;
}

struct HomProbe {
  ColimitProbe probe;
  std::vector<HomStep> steps;
};

HomProbe hom_probe(ModulePtr m, const ModulePtr& target, const std::vector<Index>& chain, const Window& w,
                   std::string subject) {
  validate_chain(chain, w);
  const Field& f = m->field();
  HomProbe out;
  out.probe.subject = std::move(subject);
  out.probe.window = w.describe();
  out.probe.chain = chain;
  for (const auto& d : chain) {
    WindowPresentation wp = present_in_window(tail(m, d, true, w));
    HomSpace h = hom_space(*wp.presentation, *target);
    out.probe.dims.push_back(h.dim());
    out.steps.push_back({std::move(wp), std::move(h)});
    if (out.steps.size() < 2) continue;
    const HomStep& prev = out.steps[out.steps.size() - 2];
    const HomStep& cur = out.steps.back();
    std::vector<Vec> columns;
    for (const auto& phi : prev.hom.basis) {
      const auto coords = cur.hom.coordinates(f, restrict_along(prev, cur, *target, phi));
      if (!coords) throw Error("restricted map is not a module map");
      columns.push_back(*coords);
    }
    out.probe.isomorphisms.push_back(is_isomorphism(f, columns, prev.hom.dim(), cur.hom.dim()));
    out.probe.transitions.push_back(std::move(columns));
  }
  out.probe.stabilized = stabilization_rule(out.probe.isomorphisms);
  out.probe.note = "relations outside the window are not seen";
  return out;
}

}  // namespace

TauColimit tau_colimit(ModulePtr m, const std::vector<Index>& chain, const Window& w) {
  validate_chain(chain, w);
  TauColimit out;
  out.probe.subject = "tau " + m->name();
  out.probe.window = w.describe();
  out.probe.chain = chain;
  for (const auto& d : chain) {
    Subfamily z(m, w);
    for (const auto& i : w.elements()) {
      for (const auto& v : annihilated_beyond(*m, i, d, w)) z.at(i).insert(v);
    }
    out.probe.dims.push_back(z.total_dim());
    out.values.push_back(std::move(z));
    if (out.values.size() < 2) continue;
    const Subfamily& prev = out.values[out.values.size() - 2];
    const Subfamily& cur = out.values.back();
    bool inclusion = true;
    for (const auto& i : w.elements()) {
      for (const auto& row : prev.at(i).basis()) inclusion &= cur.at(i).contains(row);
    }
    if (!inclusion) throw Error("torsion probe transition is not an inclusion");
    out.probe.isomorphisms.push_back(prev.total_dim() == cur.total_dim());
  }
  out.probe.stabilized = stabilization_rule(out.probe.isomorphisms);
  return out;
}

std::shared_ptr<const WindowQuotientModule> torsion_free_part(ModulePtr n, const Window& w) {
  const std::string name = n->name() + "/tau";
  auto torsion = torsion_elements(n, w).as_subfamily(n);
  return std::make_shared<const WindowQuotientModule>(name, std::move(torsion));
}

ColimitProbe qgr_hom(ModulePtr m, ModulePtr n, const std::vector<Index>& chain, const Window& w) {
  const std::string subject = "qgr-hom " + m->name() + " -> " + n->name();
  return hom_probe(std::move(m), torsion_free_part(n, w), chain, w, subject).probe;
}

SaturationProbe saturation_component(ModulePtr m, const Index& i, const std::vector<Index>& chain,
                                     const Window& w) {
  if (!w.contains(i)) throw DegreeError("saturation degree outside the window");
  const Poset& poset = m->poset();
  const Field& f = m->field();
  auto target = torsion_free_part(m, w);
  auto p = ModulePresentation::free("P" + poset.format(i), m->algebra_ptr(), {i});
  HomProbe hp = hom_probe(p, target, chain, w, "saturation of " + m->name() + " at " + poset.format(i));
  SaturationProbe out;
  for (const auto& step : hp.steps) {
    std::vector<Vec> columns;
    for (std::size_t b = 0; b < m->dim(i); ++b) {
      Vec phi;
      for (std::size_t l = 0; l < step.presentation.generators.size(); ++l) {
        const auto& g = step.presentation.generators[l];
        const Vec img = target->project(g.degree, m->act(i, unit_vec(static_cast<std::uint32_t>(b)), g.degree, g.coords));
        axpy(f, phi, f.one(), shifted(img, static_cast<std::uint32_t>(step.hom.offsets[l])));
      }
      const auto coords = step.hom.coordinates(f, phi);
      if (!coords) throw Error("natural map does not land in Hom");
      columns.push_back(*coords);
    }
    const std::size_t rank = rank_of(f, columns, step.hom.dim());
    out.natural_rank.push_back(rank);
    out.natural_injective.push_back(rank == target->dim(i));
  }
  out.probe = std::move(hp.probe);
  return out;
}

// ---------------------------------------------------------------- chi1

namespace {

/// Stabilized saturation values above a cut, with the action a: V_e -> V_e'
/// given by phi -> (p -> phi(a p)).
class SaturationModule : public GradedModule {
 public:
  SaturationModule(std::string name, AlgebraPtr algebra, ModulePtr target)
      : name_(std::move(name)), algebra_(std::move(algebra)), target_(std::move(target)) {}

  const std::string& name() const override { return name_; }
  AlgebraPtr algebra_ptr() const override { return algebra_; }

  void add(const Index& e, HomStep step) { steps_.emplace(e, std::move(step)); }

  std::size_t dim(const Index& d) const override {
    auto it = steps_.find(d);
    return it == steps_.end() ? 0 : it->second.hom.dim();
  }

  Vec act(const Index& d, const Vec& v, const Index& e, const Vec& a) const override {
    auto from = steps_.find(d), to = steps_.find(e);
    if (from == steps_.end() || to == steps_.end() || v.empty() || a.empty()) return {};
    const Field& f = field();
    const Vec phi = combine_basis(f, from->second.hom.basis, v);
    const auto& src = from->second.presentation;
    Vec image;
    for (std::size_t l = 0; l < to->second.presentation.generators.size(); ++l) {
      const auto& g = to->second.presentation.generators[l];
      const Vec moved = algebra_->multiply(d, e, g.degree, a, g.coords);
      const auto amb = src.express(g.degree, moved);
      if (!amb) throw Error("translated generator outside the tail");
      const Vec x = src.presentation->project(g.degree, *amb);
      const Vec y = apply_hom(*src.presentation, *target_, from->second.hom, phi, g.degree, x);
      axpy(f, image, f.one(), shifted(y, static_cast<std::uint32_t>(to->second.hom.offsets[l])));
    }
    const auto coords = to->second.hom.coordinates(f, image);
    if (!coords) throw Error("translated map is not a module map");
    return *coords;
  }

 private:
  std::string name_;
  AlgebraPtr algebra_;
  ModulePtr target_;
  std::map<Index, HomStep> steps_;
};

}  // namespace

CheckOutcome chi1_probe(ModulePtr m, const Index& d, const Window& w, std::size_t chain_length) {
  const Poset& poset = m->poset();
  CheckOutcome out;
  out.subject = "chi1 " + m->name() + " above " + poset.format(d);
  out.window = w.describe();
  if (!w.is_box()) throw DegreeError("chi1 probe needs a box window");
  Index top = w.hi();
  for (std::size_t c = 0; c < top.size(); ++c) {
    if (!poset.is_finite_coord(c)) top[c] += 2;
  }
  const Window big = Window::box(w.poset_ptr(), w.lo(), top);
  const auto chain = diagonal_chain(big, chain_length);
  auto target = torsion_free_part(m, big);
  auto sat = std::make_shared<SaturationModule>("sat(" + m->name() + ")", m->algebra_ptr(), target);

  auto probes = nlohmann::json::array();
  for (const auto& e : w.elements()) {
    if (!poset.less(d, e)) continue;
    auto p = ModulePresentation::free("P" + poset.format(e), m->algebra_ptr(), {e});
    HomProbe hp = hom_probe(p, target, chain, big, "saturation at " + poset.format(e));
    probes.push_back(hp.probe.to_json(poset));
    if (!hp.probe.stabilized) {
      out.verdict = Verdict::Inconclusive;
      out.note = "saturation probe at " + poset.format(e) + " did not stabilize";
      out.detail["probes"] = probes;
      return out;
    }
    sat->add(e, std::move(hp.steps.back()));
  }
  out.detail["values_window"] = big.describe();
  ModulePtr family_module = sat;
  auto test = test_finite_generation([family_module](const Window& win) { return full_restriction(family_module, win); },
                                     inner_chain(w), out.subject);
  out.verdict = test.outcome.verdict;
  out.note = test.outcome.note;
  out.detail["growth"] = test.outcome.detail["growth"];
  out.detail["saturation_dims"] = nlohmann::json::object();
  for (const auto& e : w.elements()) {
    if (poset.less(d, e)) out.detail["saturation_dims"][poset.format(e)] = sat->dim(e);
  }
  out.certificates = std::move(test.outcome.certificates);
  return out;
}

// ---------------------------------------------------------------- hom algebra

Vec identity_map(const ModulePresentation& m) {
  Vec out;
  std::size_t offset = 0;
  for (std::size_t l = 0; l < m.generator_count(); ++l) {
    const ModuleElement g = m.generator(l);
    axpy(m.field(), out, m.field().one(), shifted(g.coords, static_cast<std::uint32_t>(offset)));
    offset += m.dim(g.degree);
  }
  return out;
}

SequenceAlgebra a_of_sequence(const std::vector<PresentationPtr>& given, const std::vector<Index>& given_indices) {
  if (given.empty() || given.size() != given_indices.size()) throw Error("family and indices must match and be nonempty");
  const AlgebraPtr base = given.front()->algebra_ptr();
  const Poset& poset = base->poset();
  std::vector<std::size_t> order(given.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return poset.precedes(given_indices[x], given_indices[y]);
  });
  std::vector<PresentationPtr> family;
  std::vector<Index> indices;
  for (auto k : order) {
    family.push_back(given[k]);
    indices.push_back(given_indices[k]);
  }
  const Field& f = base->field();
  const std::size_t n = family.size();
  std::vector<std::string> names;
  for (std::size_t p = 0; p < n; ++p) {
    if (family[p]->algebra_ptr() != base) throw Error("family members over different algebras");
    for (std::size_t q = 0; q < p; ++q) {
      if (indices[p] == indices[q]) throw DegreeError("index " + poset.format(indices[p]) + " used twice");
    }
    names.push_back(poset.format(indices[p]));
  }

  SequenceAlgebra out;
  out.connectedness.subject = "connectedness of the hom algebra";
  auto cert = std::make_shared<ConnectednessCertificate>(family, names);

  std::map<std::pair<std::size_t, std::size_t>, HomSpace> homs;
  for (std::size_t p = 0; p < n; ++p) {
    HomSpace h = hom_space(*family[p], *family[p]);
    if (h.dim() != 1) {
      out.connectedness.verdict = Verdict::Refuted;
      out.connectedness.note = "End of " + family[p]->name() + " has dimension " + std::to_string(h.dim());
      out.connectedness.detail["witness"] = names[p];
      out.connectedness.detail["end_dim"] = h.dim();
      return out;
    }
    h.basis = {identity_map(*family[p])};
    homs.emplace(std::make_pair(p, p), std::move(h));
  }

  std::vector<std::pair<std::string, std::string>> less;
  std::map<std::pair<std::int64_t, std::int64_t>, StructureConstantAlgebra::Component> components;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      if (!poset.less(indices[p], indices[q])) continue;
      less.emplace_back(names[p], names[q]);
      HomSpace h = hom_space(*family[q], *family[p]);
      StructureConstantAlgebra::Component comp;
      for (std::size_t k = 0; k < h.dim(); ++k) {
        comp.labels.push_back(names[q] + "->" + names[p] + "#" + std::to_string(k));
      }
      components[{static_cast<std::int64_t>(p), static_cast<std::int64_t>(q)}] = std::move(comp);
      homs.emplace(std::make_pair(p, q), std::move(h));
    }
  }

  std::map<std::tuple<std::int64_t, std::int64_t, std::int64_t>, StructureConstantAlgebra::Table> tables;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      if (!poset.less(indices[p], indices[q])) continue;
      for (std::size_t r = 0; r < n; ++r) {
        if (!poset.less(indices[q], indices[r])) continue;
        const HomSpace& left = homs.at({p, q});
        const HomSpace& right = homs.at({q, r});
        const HomSpace& outer = homs.at({p, r});
        if (left.dim() == 0 || right.dim() == 0) continue;
        StructureConstantAlgebra::Table table(left.dim(), std::vector<Vec>(right.dim()));
        for (std::size_t a = 0; a < left.dim(); ++a) {
          for (std::size_t b = 0; b < right.dim(); ++b) {
            Vec composite;
            for (std::size_t l = 0; l < family[r]->generator_count(); ++l) {
              const Index& j = right.generator_degrees[l];
              const Vec y = apply_hom(*family[q], *family[p], left, left.basis[a], j,
                                      right.generator_image(right.basis[b], l));
              axpy(f, composite, f.one(), shifted(y, static_cast<std::uint32_t>(outer.offsets[l])));
            }
            const auto coords = outer.coordinates(f, composite);
            if (!coords) throw Error("composite is not a module map");
            table[a][b] = *coords;
          }
        }
        tables[{static_cast<std::int64_t>(p), static_cast<std::int64_t>(q), static_cast<std::int64_t>(r)}] =
            std::move(table);
      }
    }
  }

  auto induced = Poset::finite(names, less);
  out.algebra = std::make_shared<const StructureConstantAlgebra>("A(" + std::to_string(n) + " objects)", induced, f,
                                                                 std::move(components), std::move(tables));
  out.connectedness.verdict = Verdict::Verified;
  out.connectedness.detail["objects"] = names;
  out.connectedness.certificates.push_back(std::move(cert));
  return out;
}

ConnectednessCertificate::ConnectednessCertificate(std::vector<PresentationPtr> family, std::vector<std::string> names)
    : family_(std::move(family)), names_(std::move(names)) {}

nlohmann::json ConnectednessCertificate::to_json() const {
  return {{"objects", names_}, {"end_dim", 1}};
}

ReplayResult ConnectednessCertificate::replay() const {
  for (std::size_t p = 0; p < family_.size(); ++p) {
    const auto& e = *family_[p];
    const HomSpace h = hom_space(e, e);
    if (h.dim() != 1) return {false, "End of " + names_[p] + " is not one-dimensional"};
    if (!h.coordinates(e.field(), identity_map(e))) return {false, "identity of " + names_[p] + " is not a map"};
  }
  return {true, "every endomorphism space is spanned by the identity"};
}

}  // namespace ialg
