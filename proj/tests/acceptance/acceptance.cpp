#include <cstdint>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "ialg/checks.hpp"
#include "ialg/corpus.hpp"
#include "ialg/errors.hpp"
#include "ialg/qgr.hpp"
#include "ialg/session.hpp"
#include "ialg/text.hpp"

using namespace ialg;
using namespace ialg::testing;

namespace {

struct Failure {
  std::string what;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

std::vector<CertificatePtr> g_certificates;

void keep(const CheckOutcome& o) {
  for (auto& c : collect_certificates(o)) g_certificates.push_back(std::move(c));
}

std::uint64_t binomial(std::int64_t n, std::int64_t k) {
  std::uint64_t r = 1;
  for (std::int64_t t = 1; t <= k; ++t) r = r * static_cast<std::uint64_t>(n - k + t) / static_cast<std::uint64_t>(t);
  return r;
}

/// Words in two letters with a copies of the first and b of the second.
std::uint64_t count_words(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 1;
  return count_words(a - 1, b) + count_words(a, b - 1);
}

std::string corpus_text(const std::string& name) {
  for (const auto& e : corpus()) {
    if (e.name == name) return e.text;
  }
  throw Failure{"missing corpus entry " + name};
}

struct CorpusSession {
  std::string name;
  std::unique_ptr<Session> session;
  Window window;
};

std::vector<CorpusSession> corpus_sessions() {
  std::vector<CorpusSession> out;
  for (const auto& e : corpus()) {
    const auto spec = parse_session(e.text);
    auto s = std::make_unique<Session>(spec, RunOptions{});
    std::optional<WindowDecl> wd;
    for (const auto& st : spec.body) {
      if (const auto* w = std::get_if<WindowDecl>(&st)) {
        wd = *w;
        break;
      }
    }
    require(wd.has_value(), e.name + " declares no window");
    const auto w = Window::box(s->algebra()->poset_ptr(), wd->lo, wd->hi);
    out.push_back({e.name, std::move(s), w});
  }
  return out;
}

bool same_space(const Echelon& a, const Echelon& b) {
  if (a.rank() != b.rank()) return false;
  for (const auto& v : a.basis()) {
    if (!b.contains(v)) return false;
  }
  return true;
}

PresentationPtr koszul_cokernel(const std::shared_ptr<const PresentedAlgebra>& d) {
  return std::make_shared<const ModulePresentation>("K", d, koszul_map(d));
}

// ------------------------------------------------------------- criteria

void free_dimensions() {
  auto b = free_xy();
  for (std::int64_t a = 0; a <= 6; ++a) {
    for (std::int64_t c = 0; c <= 6; ++c) {
      const Index i{0, 0}, j{a, c};
      const auto expected = binomial(a + c, a);
      require(b->dim(i, j) == expected, "dim B at " + b->poset().format(j));
      require(count_words(a, c) == expected, "word count at " + b->poset().format(j));
      require(b->paths(i, j).size() == expected, "path count at " + b->poset().format(j));
    }
  }
}

void polynomial_dimensions() {
  auto d = poly_xy();
  const auto elems = box(d, {-1, -1}, {5, 5}).elements();
  for (const auto& i : elems) {
    for (const auto& j : elems) {
      const std::size_t expected = (j[0] >= i[0] && j[1] >= i[1]) ? 1 : 0;
      require(d->dim(i, j) == expected, "dim D " + d->poset().format(i) + " -> " + d->poset().format(j));
    }
  }
}

void induction_consistency() {
  for (const auto& a : {free_xy(), poly_xy()}) {
    for (const Index& i : {Index{0, 0}, Index{-1, 2}}) {
      const auto star = star_generators(a, i);
      require(star.outcome.verified(), "star generators at " + a->poset().format(i));
      std::vector<AlgebraElement> gens;
      for (const auto& g : star.generators().generators) gens.push_back({i, g.degree, g.coords});
      std::size_t pairs = 0;
      for (std::int64_t p = 0; p < 20; ++p) {
        for (std::int64_t q = 0; q < 20; ++q) {
          if ((p + 1) * (q + 1) > 20) continue;
          const Index j = i + Index{p, q};
          require(dim_via_induction(*a, i, j, gens) == a->dim(i, j),
                  a->name() + " induction at " + a->poset().format(j));
          ++pairs;
        }
      }
      require(pairs > 50, "too few pairs");
    }
  }
}

void polynomial_tails_cocompact() {
  auto d = poly_xy();
  const auto o = check_tails_cocompact(d, box(d, {0, 0}, {4, 4}));
  keep(o);
  require(o.verdict == Verdict::Verified, "cocompact verdict " + to_string(o.verdict));
  for (const auto& part : o.parts) require(part.verified(), "pair " + part.subject);
  const auto t = tail_generation(d, {0, 0}, {1, 1}, anchored_chain(d->poset_ptr(), {0, 0}, {1, 1}));
  keep(t.outcome);
  require(t.outcome.verdict == Verdict::Verified, "tail at (1,1)");
  const auto counts = t.generators().counts();
  require(counts.size() == 2 && t.generators().total() == 2, "tail at (1,1) has two generators");
  require(counts[0] == std::pair<Index, std::size_t>{{1, 2}, 1}, "generator at (1,2)");
  require(counts[1] == std::pair<Index, std::size_t>{{2, 1}, 1}, "generator at (2,1)");
}

void free_tail_growth() {
  auto b = free_xy();
  WindowChain chain;
  for (std::int64_t k = 4; k <= 6; ++k) chain.push_back(box(b, {0, 0}, {k, 3}));
  const auto o = check_tails_cocompact(b, chain.back(), {{{0, 0}, {1, 1}}});
  keep(o);
  require(o.verdict == Verdict::Inconclusive, "pair verdict " + to_string(o.verdict));
  bool growth_cert = false;
  for (const auto& c : collect_certificates(o)) growth_cert = growth_cert || c->kind() == "growth";
  require(growth_cert, "growth certificate present");

  const auto t = tail_generation(b, {0, 0}, {1, 1}, chain);
  keep(t.outcome);
  require(t.outcome.verdict == Verdict::Inconclusive, "tail verdict");
  require(t.profile.strictly_increasing(), "counts strictly increase");
  for (std::size_t w = 0; w < chain.size(); ++w) {
    const std::int64_t k = static_cast<std::int64_t>(w) + 4;
    const auto counts = t.profile.reports[w].counts();
    for (std::int64_t a = 2; a <= k; ++a) {
      bool fresh = false;
      for (const auto& [deg, n] : counts) fresh = fresh || (deg == Index{a, 1} && n > 0);
      require(fresh, "fresh generator at (" + std::to_string(a) + ",1) for k = " + std::to_string(k));
    }
  }
}

void star_on_both() {
  for (const auto& a : {free_xy(), poly_xy()}) {
    const auto w = box(a, {0, 0}, {3, 3});
    const auto o = check_star(a, w);
    keep(o);
    require(o.verified(), a->name() + " star verdict");
    for (const auto& i : w.elements()) {
      const auto counts = star_generators(a, i).generators().counts();
      require(counts.size() == 2, a->name() + " two star generators at " + a->poset().format(i));
      require(counts[0] == std::pair<Index, std::size_t>{i + Index{0, 1}, 1}, "y at " + a->poset().format(i));
      require(counts[1] == std::pair<Index, std::size_t>{i + Index{1, 0}, 1}, "x at " + a->poset().format(i));
    }
  }
}

void strong_indexing() {
  for (const auto& a : {poly_xy(), q_poly_xy(2)}) {
    const auto w = box(a, {0, 0}, {3, 3});
    const auto s = check_strongly_indexed(a, w);
    keep(s);
    require(s.verdict == Verdict::Verified, a->name() + " strongly indexed");
    const auto r = strong_indexing_route(a, w);
    keep(r);
    require(r.verdict == Verdict::VerifiedByCriterion, a->name() + " route");
  }
  auto b = free_xy();
  const auto s = check_strongly_indexed(b, box(b, {0, 0}, {1, 1}));
  keep(s);
  require(s.verdict == Verdict::Refuted, "free algebra refuted");
  require(s.detail["triple"] == nlohmann::json::array({"(0,0)", "(1,0)", "(1,1)"}), "witness triple");
  require(s.detail["witness"] == "yx", "cokernel witness");
}

void tail_sequence_identity() {
  auto sessions = corpus_sessions();
  std::mt19937_64 rng(20240611);
  std::size_t done = 0;
  while (done < 50) {
    auto& cs = sessions[rng() % sessions.size()];
    const auto names = cs.session->module_names();
    if (names.empty()) continue;
    const auto m = cs.session->module(names[rng() % names.size()]);
    const auto& elems = cs.window.elements();
    const auto d = elems[rng() % elems.size()];
    const auto j = elems[rng() % elems.size()];
    const auto weak = tail(m, d, false, cs.window).dim(j);
    const auto strict = tail(m, d, true, cs.window).dim(j);
    const auto expected = strict + (j == d ? m->dim(d) : 0);
    std::ostringstream what;
    what << cs.name << "/" << m->name() << " d=" << m->poset().format(d) << " j=" << m->poset().format(j);
    require(weak == expected, what.str());
    ++done;
  }
}

void torsion_colimit_agreement() {
  auto d = poly_xy();
  const auto w = box(d, {0, 0}, {4, 4});
  const auto chain = diagonal_chain(w);
  for (const Index& i : {Index{0, 0}, Index{1, 0}, Index{0, 1}}) {
    auto p = free_at(d, i);
    const std::vector<ModulePtr> modules = {p, simple_xy(d, i),
                                            std::make_shared<TailQuotientModule>("P/P>(1,1)", p, Index{1, 1})};
    for (const auto& m : modules) {
      const auto t = tau_colimit(m, chain, w);
      keep(t.probe.outcome());
      require(t.probe.stabilized, m->name() + " stabilized");
      const auto torsion = torsion_elements(m, w).as_subfamily(m);
      for (const auto& e : w.elements()) {
        require(same_space(t.values.back().at(e), torsion.at(e)), m->name() + " at " + d->poset().format(e));
      }
    }
  }
}

void yoneda_dimensions() {
  for (const auto& cs : corpus_sessions()) {
    const auto a = cs.session->algebra();
    for (const auto& name : cs.session->module_names()) {
      const auto n = cs.session->module(name);
      for (const auto& i : cs.window.elements()) {
        const auto p = ModulePresentation::free("P", a, {i});
        require(hom_space(*p, *n).dim() == n->dim(i), cs.name + "/" + name + " at " + a->poset().format(i));
      }
    }
  }
}

void sequence_algebra_reconstruction() {
  auto d = poly_xy();
  const auto w = box(d, {0, 0}, {2, 2});
  std::vector<PresentationPtr> family;
  for (const auto& i : w.elements()) family.push_back(free_at(d, i));
  const auto res = a_of_sequence(family, w.elements());
  keep(res.connectedness);
  require(res.connectedness.verdict == Verdict::Verified, "connectedness");
  require(res.algebra != nullptr, "algebra built");
  const auto& ae = *res.algebra;
  const auto& elems = w.elements();
  const auto idx = [](std::size_t k) { return Index{static_cast<std::int64_t>(k)}; };
  std::size_t products = 0;
  for (std::size_t p = 0; p < elems.size(); ++p) {
    for (std::size_t q = 0; q < elems.size(); ++q) {
      require(ae.dim(idx(p), idx(q)) == d->dim(elems[p], elems[q]), "dim " + std::to_string(p) + "," + std::to_string(q));
      if (!ae.poset().leq(idx(p), idx(q))) continue;
      for (std::size_t r = 0; r < elems.size(); ++r) {
        if (!ae.poset().leq(idx(q), idx(r))) continue;
        const auto ours = ae.multiply_basis(idx(p), idx(q), idx(r), 0, 0);
        const auto theirs = d->multiply_basis(elems[p], elems[q], elems[r], 0, 0);
        require(ours == theirs, "product " + std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(r));
        ++products;
      }
    }
  }
  require(products > 0, "no products sampled");
  const auto single = a_of_sequence({free_at(d, {0, 0})}, {{0, 0}});
  keep(single.connectedness);
  require(single.algebra && single.algebra->dim({0}, {0}) == 1, "single object");
}

void qgr_vanishing() {
  auto d = poly_xy();
  const auto w = box(d, {0, 0}, {5, 5});
  const auto chain = diagonal_chain(w, 4);
  require(chain.size() == 4, "chain length");
  const auto probe = qgr_hom(free_at(d, {0, 0}), simple_xy(d, {0, 0}), chain, w);
  keep(probe.outcome());
  require(probe.stabilized, "stabilized");
  require(probe.terminal_dim() == 0, "vanishes");
}

void sequence_conditions() {
  auto d = poly_xy();
  const auto w = box(d, {0, 0}, {4, 4});
  const auto rep = check_sequence_conditions(d, w, {free_at(d, {0, 0}), simple_xy(d, {0, 0}), koszul_cokernel(d)});
  keep(rep.combined());
  require(rep.projectivity.verdict == Verdict::Verified, "projectivity " + to_string(rep.projectivity.verdict));
  require(rep.coherence.verdict == Verdict::Verified, "coherence " + to_string(rep.coherence.verdict));
  require(rep.ampleness.verdict == Verdict::Verified, "ampleness " + to_string(rep.ampleness.verdict));
}

void certificate_replay() {
  require(!g_certificates.empty(), "no certificates collected");
  std::size_t failed = 0;
  std::string first;
  for (const auto& c : g_certificates) {
    const auto r = c->replay();
    if (!r.ok) {
      if (failed++ == 0) first = c->kind() + ": " + r.detail;
    }
  }
  require(failed == 0, std::to_string(failed) + " of " + std::to_string(g_certificates.size()) + " failed, first " + first);
}

void determinism() {
  std::vector<std::string> first, second;
  for (int round = 0; round < 2; ++round) {
    auto& out = round == 0 ? first : second;
    for (const auto& e : corpus()) {
      RunOptions opt;
      opt.name = e.name;
      out.push_back(run_text(e.text, opt).json.dump());
    }
  }
  require(first == second, "reports differ");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void()>>> criteria = {
      {"free_dimension_oracle", free_dimensions},
      {"polynomial_dimension_oracle", polynomial_dimensions},
      {"induction_matches_components", induction_consistency},
      {"polynomial_tails_cocompact", polynomial_tails_cocompact},
      {"free_tail_growth", free_tail_growth},
      {"diagonal_tails_finitely_generated", star_on_both},
      {"strong_indexing_dichotomy", strong_indexing},
      {"tail_sequence_identity", tail_sequence_identity},
      {"torsion_colimit_agreement", torsion_colimit_agreement},
      {"yoneda_dimensions", yoneda_dimensions},
      {"sequence_algebra_reconstruction", sequence_algebra_reconstruction},
      {"qgr_hom_into_torsion_vanishes", qgr_vanishing},
      {"sequence_conditions", sequence_conditions},
      {"certificate_replay", certificate_replay},
      {"report_determinism", determinism},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto& [name, run] = criteria[k];
    std::string detail;
    bool ok = false;
    try {
      run();
      ok = true;
    } catch (const Failure& f) {
      detail = f.what;
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::cout << (ok ? "PASS" : "FAIL") << " " << (k + 1) << " " << name;
    if (!ok) std::cout << ": " << detail;
    std::cout << std::endl;
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
