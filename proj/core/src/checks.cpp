#include "ialg/checks.hpp"

#include <algorithm>

#include "ialg/errors.hpp"

namespace ialg {

namespace {

nlohmann::json elements_json(const Poset& poset, const std::vector<ModuleElement>& gens) {
  auto out = nlohmann::json::array();
  for (const auto& g : gens) {
    auto coords = nlohmann::json::array();
    for (const auto& [c, x] : g.coords) coords.push_back({c, Field::format(x)});
    out.push_back({{"degree", poset.format(g.degree)}, {"coords", coords}});
  }
  return out;
}

std::string pair_label(const Poset& poset, const Index& i, const Index& d) {
  return "(" + poset.format(i) + "," + poset.format(d) + ")";
}

}  // namespace

// ---------------------------------------------------------------- windows

Index grow(const Poset& poset, const Index& d, std::int64_t k) {
  Index out = d;
  for (std::size_t c = 0; c < d.size(); ++c) {
    if (poset.is_finite_coord(c)) {
      out[c] = static_cast<std::int64_t>(poset.finite_factor_of(c)->size()) - 1;
    } else {
      out[c] = d[c] + k;
    }
  }
  return out;
}

WindowChain anchored_chain(const PosetPtr& poset, const Index& anchor, const Index& d,
                           const ChainPolicy& policy) {
  WindowChain out;
  for (std::size_t k = 1; k <= policy.length; ++k) {
    out.push_back(Window::box(poset, anchor, grow(*poset, d, static_cast<std::int64_t>(k))));
  }
  return out;
}

WindowChain inner_chain(const Window& w, const ChainPolicy& policy) {
  WindowChain out;
  if (!w.is_box()) {
    out.assign(policy.length, w);
    return out;
  }
  const Poset& poset = w.poset();
  for (std::size_t k = 0; k < policy.length; ++k) {
    const auto s = static_cast<std::int64_t>(policy.length - 1 - k);
    Index top = w.hi();
    for (std::size_t c = 0; c < top.size(); ++c) {
      if (!poset.is_finite_coord(c)) top[c] = std::max(w.lo()[c], w.hi()[c] - s);
    }
    out.push_back(Window::box(w.poset_ptr(), w.lo(), top));
  }
  return out;
}

FamilyProducer tail_producer(ModulePtr m, Index cut, bool strict) {
  return [m = std::move(m), cut = std::move(cut), strict](const Window& w) { return tail(m, cut, strict, w); };
}

// ---------------------------------------------------------------- generation tests

GeneratorReport GenerationTest::generators() const {
  GeneratorReport out;
  if (!profile.reports.empty()) out = profile.reports.back();
  out.verified = outcome.verified();
  return out;
}

GenerationTest test_finite_generation(const FamilyProducer& family, const WindowChain& chain,
                                      std::string subject) {
  GenerationTest out;
  out.outcome.subject = std::move(subject);
  if (chain.empty()) {
    out.outcome.verdict = Verdict::Inconclusive;
    out.outcome.note = "empty window chain";
    return out;
  }
  const Poset& poset = chain.front().poset();
  std::optional<Subfamily> top;
  for (const auto& w : chain) {
    top.emplace(family(w));
    out.profile.reports.push_back(min_generators(*top));
  }
  out.outcome.window = chain.back().describe();
  out.outcome.detail["growth"] = out.profile.to_json(poset);
  if (chain.size() >= 3 && out.profile.stable()) {
    const auto& gens = out.profile.reports.back().generators;
    out.outcome.verdict = Verdict::Verified;
    out.outcome.detail["generators"] = out.profile.reports.back().to_json(poset);
    out.outcome.certificates.push_back(
        std::make_shared<GenerationCertificate>(family, chain.back(), top->module_ptr(), gens));
  } else {
    out.outcome.verdict = Verdict::Inconclusive;
    if (chain.size() < 3) out.outcome.note = "window chain shorter than three";
    else if (out.profile.strictly_increasing()) out.outcome.note = "growth evidence: generator counts strictly increase";
    else out.outcome.note = "generator list not stable on the last two windows";
    out.outcome.certificates.push_back(std::make_shared<GrowthCertificate>(family, chain, out.profile));
  }
  return out;
}

GenerationTest star_generators(AlgebraPtr a, const Index& i, const ChainPolicy& policy) {
  const Poset& poset = a->poset();
  auto p = ModulePresentation::free("P" + poset.format(i), a, {i});
  return test_finite_generation(tail_producer(p, i, true), anchored_chain(a->poset_ptr(), i, i, policy),
                                "star at " + poset.format(i));
}

CheckOutcome check_star(AlgebraPtr a, const Window& w, const ChainPolicy& policy) {
  std::vector<CheckOutcome> parts;
  for (const auto& i : w.elements()) parts.push_back(star_generators(a, i, policy).outcome);
  CheckOutcome out = aggregate("star " + a->name(), std::move(parts));
  out.window = w.describe();
  return out;
}

GenerationTest tail_generation(AlgebraPtr a, const Index& i, const Index& d, const WindowChain& chain) {
  const Poset& poset = a->poset();
  if (!poset.leq(i, d)) throw DegreeError("tail pair " + pair_label(poset, i, d) + " is not ordered");
  auto p = ModulePresentation::free("P" + poset.format(i), a, {i});
  return test_finite_generation(tail_producer(p, d, true), chain, "tail " + pair_label(poset, i, d));
}

CheckOutcome check_tails_cocompact(AlgebraPtr a, const Window& w, std::vector<std::pair<Index, Index>> pairs,
                                   const ChainPolicy& policy) {
  const Poset& poset = a->poset();
  if (pairs.empty()) {
    for (const auto& i : w.elements()) {
      for (const auto& d : w.elements()) {
        if (poset.leq(i, d)) pairs.emplace_back(i, d);
      }
    }
  }
  std::vector<CheckOutcome> parts;
  for (const auto& [i, d] : pairs) {
    parts.push_back(tail_generation(a, i, d, anchored_chain(a->poset_ptr(), i, d, policy)).outcome);
  }
  CheckOutcome out = aggregate("tails-cocompact " + a->name(), std::move(parts));
  out.window = w.describe();
  return out;
}

// ---------------------------------------------------------------- strong indexing

namespace {

Echelon product_span(const IndexedAlgebra& a, const Index& i, const Index& d, const Index& u) {
  Echelon span(a.field(), a.dim(i, u));
  const std::size_t left = a.dim(i, d), right = a.dim(d, u);
  for (std::size_t p = 0; p < left; ++p) {
    for (std::size_t q = 0; q < right; ++q) span.insert(a.multiply_basis(i, d, u, p, q));
  }
  return span;
}

}  // namespace

CheckOutcome check_strongly_indexed(AlgebraPtr a, const Window& w) {
  CheckOutcome out;
  out.subject = "strongly-indexed " + a->name();
  out.window = w.describe();
  const Poset& poset = a->poset();
  const auto& elems = w.elements();
  std::size_t triples = 0;
  for (const auto& i : elems) {
    for (const auto& u : elems) {
      if (!poset.less(i, u)) continue;
      const std::size_t n = a->dim(i, u);
      if (n == 0) continue;
      for (auto it = elems.rbegin(); it != elems.rend(); ++it) {
        const Index& d = *it;
        if (!poset.less(i, d) || !poset.less(d, u)) continue;
        ++triples;
        const Echelon span = product_span(*a, i, d, u);
        if (span.rank() == n) continue;
        const std::uint32_t witness = span.non_pivots().front();
        auto cert = std::make_shared<StrongIndexingRefutation>(a, i, d, u, witness);
        out.verdict = Verdict::Refuted;
        out.note = "A_iu is larger than A_id A_du";
        out.detail["triple"] = {poset.format(i), poset.format(d), poset.format(u)};
        out.detail["witness"] = cert->witness_label();
        out.detail["span_rank"] = span.rank();
        out.detail["dim"] = n;
        out.certificates.push_back(std::move(cert));
        return out;
      }
    }
  }
  out.verdict = Verdict::Verified;
  out.detail["triples_checked"] = triples;
  return out;
}

CheckOutcome strong_indexing_route(AlgebraPtr a, const Window& w, const ChainPolicy& policy) {
  CheckOutcome star = check_star(a, w, policy);
  CheckOutcome strong = check_strongly_indexed(a, w);
  CheckOutcome out;
  out.subject = "tails-cocompact by criterion " + a->name();
  out.window = w.describe();
  out.detail["noetherian_route"] = "unavailable";
  if (star.verified() && strong.verified()) {
    out.verdict = Verdict::VerifiedByCriterion;
    out.note = "strongly indexed with finitely generated diagonal tails";
  } else if (strong.verdict == Verdict::Refuted) {
    out.verdict = Verdict::Inconclusive;
    out.note = "criterion not applicable: strong indexing refuted";
  } else {
    out.verdict = Verdict::Inconclusive;
    out.note = "criterion not applicable: diagonal tails not verified";
  }
  out.parts = {std::move(star), std::move(strong)};
  return out;
}

// ---------------------------------------------------------------- coherence probe

namespace {

Subfamily kernel_on(const PresentationPtr& source, const ModulePresentation& coker, const Window& w) {
  Subfamily out(source, w);
  const auto& cols = coker.map().source.degrees;
  const Poset& poset = w.poset();
  for (const auto& e : w.elements()) {
    std::vector<Vec> images;
    for (std::size_t t = 0; t < cols.size(); ++t) {
      if (!poset.leq(cols[t], e)) continue;
      const std::size_t n = coker.algebra().dim(cols[t], e);
      for (std::size_t b = 0; b < n; ++b) {
        images.push_back(coker.column_image(t, e, unit_vec(static_cast<std::uint32_t>(b))));
      }
    }
    Echelon& k = out.at(e);
    for (const auto& z : kernel_basis(coker.field(), images, coker.block_offsets(e).back())) k.insert(z);
  }
  return out;
}

FamilyProducer kernel_producer(AlgebraPtr a, const ModuleMap& f, const std::string& name) {
  auto source = ModulePresentation::free(name + ".source", a, f.source.degrees);
  auto coker = std::make_shared<const ModulePresentation>(name, a, f);
  return [source, coker](const Window& w) { return kernel_on(source, *coker, w); };
}

}  // namespace

Subfamily kernel_family(AlgebraPtr a, const ModuleMap& f, const Window& w) {
  return kernel_producer(std::move(a), f, "map")(w);
}

CheckOutcome check_coherence_probe(AlgebraPtr a, const Window& w, const std::vector<ModuleMap>& trial_maps,
                                   const ChainPolicy& policy) {
  std::vector<CheckOutcome> parts;
  for (std::size_t k = 0; k < trial_maps.size(); ++k) {
    const std::string name = "map" + std::to_string(k);
    parts.push_back(
        test_finite_generation(kernel_producer(a, trial_maps[k], name), inner_chain(w, policy), "kernel of " + name)
            .outcome);
  }
  CheckOutcome out = aggregate("coherence probe " + a->name(), std::move(parts));
  out.window = w.describe();
  out.note = "probe over the supplied maps only";
  return out;
}

// ---------------------------------------------------------------- sequence conditions

namespace {

/// Degrees of w where the closure of the generators misses the target.
std::vector<Index> cokernel_support(const Subfamily& closure, const Subfamily& target) {
  std::vector<Index> out;
  for (const auto& e : target.window().elements()) {
    if (closure.dim(e) != target.dim(e)) out.push_back(e);
  }
  return out;
}

/// First window degree with no cokernel at or above it.
std::optional<Index> surjectivity_bound(const Window& w, const std::vector<Index>& bad) {
  const Poset& poset = w.poset();
  for (const auto& e : w.elements()) {
    bool clean = true;
    for (const auto& b : bad) {
      if (poset.leq(e, b)) {
        clean = false;
        break;
      }
    }
    if (clean) return e;
  }
  return std::nullopt;
}

CheckOutcome surjection_check(const FamilyProducer& target, const Window& w, ModulePtr m,
                              std::vector<ModuleElement> gens, std::string subject) {
  CheckOutcome out;
  out.subject = std::move(subject);
  out.window = w.describe();
  std::vector<ModuleElement> inside;
  for (auto& g : gens) {
    if (w.contains(g.degree)) inside.push_back(std::move(g));
  }
  const Subfamily tgt = target(w);
  const Subfamily closure = generation_closure(m, inside, w);
  const auto bad = cokernel_support(closure, tgt);
  const auto bound = surjectivity_bound(w, bad);
  out.detail["cokernel_degrees"] = bad.size();
  if (!bound) {
    out.verdict = Verdict::Inconclusive;
    out.note = "sample map not surjective in the window; skipped";
    return out;
  }
  out.verdict = Verdict::Verified;
  out.detail["bound"] = w.poset().format(*bound);
  out.certificates.push_back(std::make_shared<SurjectivityCertificate>(target, w, m, std::move(inside), *bound));
  return out;
}

}  // namespace

CheckOutcome SequenceReport::combined() const {
  return aggregate("sequence conditions", {projectivity, coherence, ampleness});
}

SequenceReport check_sequence_conditions(AlgebraPtr a, const Window& w, const std::vector<ModulePtr>& samples,
                                         const ChainPolicy& policy) {
  const Poset& poset = a->poset();
  std::vector<CheckOutcome> amp, coh, proj;
  for (const auto& m : samples) {
    if (m->algebra_ptr() != a) throw DegreeError("sample " + m->name() + " is over a different algebra");

    std::vector<ModuleElement> cover;
    if (auto pres = std::dynamic_pointer_cast<const ModulePresentation>(m)) {
      for (std::size_t l = 0; l < pres->generator_count(); ++l) cover.push_back(pres->generator(l));
    } else {
      cover = min_generators(full_restriction(m, w)).generators;
    }
    proj.push_back(surjection_check([m](const Window& win) { return full_restriction(m, win); }, w, m, cover,
                                    "(P) cover of " + m->name()));

    for (const auto& d : w.elements()) {
      const std::string label = m->name() + " above " + poset.format(d);
      auto test = test_finite_generation(tail_producer(m, d, true),
                                         anchored_chain(a->poset_ptr(), w.lo(), d, policy), "(A) " + label);
      bool above = true;
      for (const auto& g : test.profile.reports.back().generators) above &= poset.less(d, g.degree);
      if (!above) {
        test.outcome.verdict = Verdict::Refuted;
        test.outcome.note = "generator not above the cut";
      }
      CheckOutcome c = test.outcome;
      c.subject = "(C) " + label;
      coh.push_back(std::move(c));
      amp.push_back(std::move(test.outcome));

      proj.push_back(surjection_check(tail_producer(m, d, true), w, m,
                                      min_generators(tail(m, d, true, w)).generators, "(P) tail cover of " + label));
    }
  }
  SequenceReport out;
  out.projectivity = aggregate("(P) projectivity", std::move(proj));
  out.coherence = aggregate("(C) coherence", std::move(coh));
  out.ampleness = aggregate("(A) ampleness", std::move(amp));
  for (auto* o : {&out.projectivity, &out.coherence, &out.ampleness}) o->window = w.describe();
  return out;
}

// ---------------------------------------------------------------- certificates

GenerationCertificate::GenerationCertificate(FamilyProducer family, Window window, ModulePtr module,
                                             std::vector<ModuleElement> generators)
    : family_(std::move(family)), window_(std::move(window)), module_(std::move(module)),
      generators_(std::move(generators)) {}

nlohmann::json GenerationCertificate::to_json() const {
  return {{"module", module_->name()},
          {"window", window_.describe()},
          {"generators", elements_json(window_.poset(), generators_)}};
}

ReplayResult GenerationCertificate::replay() const {
  const Subfamily target = family_(window_);
  for (const auto& g : generators_) {
    if (!window_.contains(g.degree)) return {false, "generator outside the window"};
    if (!target.at(g.degree).contains(g.coords)) return {false, "generator outside the family"};
  }
  const Subfamily closure = generation_closure(module_, generators_, window_);
  if (!(closure == target)) return {false, "closure differs from the family"};
  return {true, "closure of " + std::to_string(generators_.size()) + " generators equals the family"};
}

GrowthCertificate::GrowthCertificate(FamilyProducer family, WindowChain chain, GrowthProfile profile)
    : family_(std::move(family)), chain_(std::move(chain)), profile_(std::move(profile)) {}

nlohmann::json GrowthCertificate::to_json() const { return profile_.to_json(chain_.front().poset()); }

ReplayResult GrowthCertificate::replay() const {
  if (chain_.size() != profile_.reports.size()) return {false, "chain and profile differ in length"};
  for (std::size_t k = 0; k < chain_.size(); ++k) {
    const Subfamily fam = family_(chain_[k]);
    const auto& gens = profile_.reports[k].generators;
    Subfamily lower(fam.module_ptr(), chain_[k]);
    for (const auto& e : chain_[k].elements()) {
      for (const auto& row : action_image(fam, e).basis()) lower.at(e).insert(row);
    }
    std::size_t fresh = 0;
    for (const auto& e : chain_[k].elements()) fresh += fam.dim(e) - lower.at(e).rank();
    if (fresh != gens.size()) return {false, "generator count differs on " + chain_[k].describe()};
  }
  return {true, "generator counts reproduced on every window"};
}

StrongIndexingRefutation::StrongIndexingRefutation(AlgebraPtr a, Index i, Index d, Index u, std::uint32_t witness)
    : a_(std::move(a)), i_(std::move(i)), d_(std::move(d)), u_(std::move(u)), witness_(witness) {}

std::string StrongIndexingRefutation::witness_label() const { return a_->basis_label(i_, u_, witness_); }

nlohmann::json StrongIndexingRefutation::to_json() const {
  const Poset& p = a_->poset();
  return {{"triple", {p.format(i_), p.format(d_), p.format(u_)}}, {"witness", witness_label()}};
}

ReplayResult StrongIndexingRefutation::replay() const {
  const Poset& p = a_->poset();
  if (!p.less(i_, d_) || !p.less(d_, u_)) return {false, "triple is not a chain"};
  if (witness_ >= a_->dim(i_, u_)) return {false, "witness outside A_iu"};
  if (product_span(*a_, i_, d_, u_).contains(unit_vec(witness_))) return {false, "witness lies in the product span"};
  return {true, witness_label() + " is not a sum of products through " + p.format(d_)};
}

SurjectivityCertificate::SurjectivityCertificate(FamilyProducer target, Window window, ModulePtr module,
                                                 std::vector<ModuleElement> generators, Index bound)
    : target_(std::move(target)), window_(std::move(window)), module_(std::move(module)),
      generators_(std::move(generators)), bound_(std::move(bound)) {}

nlohmann::json SurjectivityCertificate::to_json() const {
  return {{"module", module_->name()},
          {"window", window_.describe()},
          {"bound", window_.poset().format(bound_)},
          {"generators", elements_json(window_.poset(), generators_)}};
}

ReplayResult SurjectivityCertificate::replay() const {
  const Subfamily target = target_(window_);
  const Subfamily closure = generation_closure(module_, generators_, window_);
  const Poset& p = window_.poset();
  for (const auto& e : window_.elements()) {
    if (!p.leq(bound_, e)) continue;
    if (closure.dim(e) != target.dim(e)) return {false, "cokernel at " + p.format(e)};
    for (const auto& row : closure.at(e).basis()) {
      if (!target.at(e).contains(row)) return {false, "image leaves the target at " + p.format(e)};
    }
  }
  return {true, "surjective at every window degree above " + p.format(bound_)};
}

}  // namespace ialg
