#include "doctest.h"

#include "fixtures.hpp"
#include "ialg/checks.hpp"
#include "ialg/errors.hpp"

using namespace ialg;
using namespace ialg::testing;

namespace {

void check_replays(const CheckOutcome& o) {
  for (const auto& c : collect_certificates(o)) {
    const auto r = c->replay();
    INFO(c->kind() << ": " << r.detail);
    CHECK(r.ok);
  }
}

}  // namespace

TEST_CASE("window chains") {
  auto d = poly_xy();
  const auto chain = anchored_chain(d->poset_ptr(), {0, 0}, {1, 1});
  REQUIRE(chain.size() == 3);
  CHECK(chain[0].hi() == Index{2, 2});
  CHECK(chain[2].hi() == Index{4, 4});
  const auto inner = inner_chain(box(d, {0, 0}, {4, 3}));
  REQUIRE(inner.size() == 3);
  CHECK(inner[0].hi() == Index{2, 1});
  CHECK(inner[2].hi() == Index{4, 3});
}

TEST_CASE("diagonal tails of the polynomial delooping") {
  auto d = poly_xy();
  auto t = star_generators(d, {0, 0});
  CHECK(t.outcome.verdict == Verdict::Verified);
  const auto counts = t.generators().counts();
  REQUIRE(counts.size() == 2);
  CHECK(counts[0] == std::pair<Index, std::size_t>{{0, 1}, 1});
  CHECK(counts[1] == std::pair<Index, std::size_t>{{1, 0}, 1});
  const auto all = check_star(d, box(d, {0, 0}, {2, 2}));
  CHECK(all.verdict == Verdict::Verified);
  check_replays(all);
}

TEST_CASE("tail above (1,1) needs two generators") {
  auto d = poly_xy();
  auto t = tail_generation(d, {0, 0}, {1, 1}, anchored_chain(d->poset_ptr(), {0, 0}, {1, 1}));
  CHECK(t.outcome.verdict == Verdict::Verified);
  const auto counts = t.generators().counts();
  REQUIRE(counts.size() == 2);
  CHECK(counts[0].first == Index{1, 2});
  CHECK(counts[1].first == Index{2, 1});
  check_replays(t.outcome);
}

TEST_CASE("free algebra tails grow without bound") {
  auto b = free_xy();
  WindowChain chain;
  for (std::int64_t k = 4; k <= 6; ++k) chain.push_back(box(b, {0, 0}, {k, 3}));
  auto t = tail_generation(b, {0, 0}, {1, 1}, chain);
  CHECK(t.outcome.verdict == Verdict::Inconclusive);
  CHECK(t.profile.strictly_increasing());
  check_replays(t.outcome);
  CHECK(t.outcome.certificates.front()->kind() == "growth");
}

TEST_CASE("strong indexing") {
  auto b = free_xy();
  const auto refuted = check_strongly_indexed(b, box(b, {0, 0}, {2, 2}));
  REQUIRE(refuted.verdict == Verdict::Refuted);
  CHECK(refuted.detail["witness"] == "yx");
  CHECK(refuted.detail["triple"][1] == "(1,0)");
  check_replays(refuted);

  auto d = poly_xy();
  const auto w = box(d, {0, 0}, {2, 2});
  CHECK(check_strongly_indexed(d, w).verdict == Verdict::Verified);
  const auto route = strong_indexing_route(d, w);
  CHECK(route.verdict == Verdict::VerifiedByCriterion);
  CHECK(route.detail["noetherian_route"] == "unavailable");
  const auto no_route = strong_indexing_route(b, box(b, {0, 0}, {1, 1}));
  CHECK(no_route.verdict == Verdict::Inconclusive);
  CHECK(no_route.note.find("not applicable") != std::string::npos);
}

TEST_CASE("q-polynomial delooping is strongly indexed") {
  auto q = q_poly_xy(2);
  CHECK(check_strongly_indexed(q, box(q, {0, 0}, {2, 2})).verdict == Verdict::Verified);
}

TEST_CASE("kernel of (x, y) is generated in degree (1,1)") {
  auto d = poly_xy();
  const auto w = box(d, {0, 0}, {3, 3});
  const auto k = kernel_family(d, xy_map(d), w);
  CHECK(k.dim({0, 0}) == 0);
  CHECK(k.dim({1, 0}) == 0);
  CHECK(k.dim({1, 1}) == 1);
  CHECK(k.dim({2, 2}) == 1);
  const auto gens = min_generators(k).counts();
  REQUIRE(gens.size() == 1);
  CHECK(gens[0] == std::pair<Index, std::size_t>{{1, 1}, 1});

  const auto probe = check_coherence_probe(d, w, {xy_map(d)});
  CHECK(probe.verdict == Verdict::Verified);
  check_replays(probe);
}

TEST_CASE("sequence conditions on the polynomial delooping") {
  auto d = poly_xy();
  const auto w = box(d, {0, 0}, {1, 1});
  const auto rep = check_sequence_conditions(d, w, {free_at(d, {0, 0}), simple_xy(d, {0, 0})});
  CHECK(rep.ampleness.verdict == Verdict::Verified);
  CHECK(rep.coherence.verdict == Verdict::Verified);
  CHECK(rep.projectivity.verdict == Verdict::Verified);
  CHECK(rep.combined().verified());
  check_replays(rep.combined());
  CHECK(check_sequence_conditions(d, w, {}).combined().verdict == Verdict::Verified);
}

TEST_CASE("finite chain algebra") {
  auto p = Poset::finite({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  std::map<std::pair<std::int64_t, std::int64_t>, StructureConstantAlgebra::Component> comps;
  comps[{0, 1}] = {{"f"}};
  comps[{1, 2}] = {{"g"}};
  comps[{0, 2}] = {{"gf"}};
  std::map<std::tuple<std::int64_t, std::int64_t, std::int64_t>, StructureConstantAlgebra::Table> tables;
  tables[{0, 1, 2}] = {{{{0, Scalar(1)}}}};
  auto a = std::make_shared<const StructureConstantAlgebra>("chain3", p, Field::rationals(), comps, tables);
  const auto w = Window::box(p, {0}, {2});
  CHECK(check_star(a, w).verdict == Verdict::Verified);
  CHECK(strong_indexing_route(a, w).verdict == Verdict::VerifiedByCriterion);
}
