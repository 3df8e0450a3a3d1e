#include "doctest.h"

#include <functional>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "ialg/errors.hpp"

using namespace ialg;
using namespace ialg::testing;

namespace {

/// Independent count of words with a letters x and b letters y.
std::size_t count_words(int a, int b) {
  std::set<std::string> words;
  std::function<void(std::string, int, int)> grow = [&](std::string w, int x, int y) {
    if (x == 0 && y == 0) {
      words.insert(w);
      return;
    }
    if (x > 0) grow(w + "x", x - 1, y);
    if (y > 0) grow(w + "y", x, y - 1);
  };
  grow("", a, b);
  return words.size();
}

std::vector<std::string> labels(const IndexedAlgebra& a, const Index& i, const Index& j) {
  return component_basis(a, i, j).labels;
}

}  // namespace

TEST_CASE("free algebra components match word counts") {
  auto b = free_xy();
  for (int x = 0; x <= 6; ++x) {
    for (int y = 0; y <= 6; ++y) CHECK(b->dim({0, 0}, {x, y}) == count_words(x, y));
  }
  CHECK(labels(*b, {0, 0}, {2, 1}) == std::vector<std::string>{"xxy", "xyx", "yxx"});
  CHECK(b->dim({3, 3}, {5, 4}) == 3);
}

TEST_CASE("polynomial components are one-dimensional on the upper cone") {
  auto d = poly_xy();
  for (int m = -1; m <= 5; ++m)
    for (int n = -1; n <= 5; ++n)
      for (int r = -1; r <= 5; ++r)
        for (int s = -1; s <= 5; ++s) CHECK(d->dim({m, n}, {r, s}) == ((r >= m && s >= n) ? 1u : 0u));
  CHECK(labels(*d, {0, 0}, {2, 1}) == std::vector<std::string>{"xxy"});
}

TEST_CASE("multiplication reduces to normal form") {
  auto b = free_xy();
  auto d = poly_xy();
  const AlgebraElement x{{0, 0}, {1, 0}, b->normal_form({0, 0}, {1, 0}, {0})};
  const AlgebraElement y{{1, 0}, {1, 1}, b->normal_form({1, 0}, {1, 1}, {1})};
  const auto xy = multiply(*b, x, y);
  CHECK(b->basis_label({0, 0}, {1, 1}, xy.coords.at(0).first) == "xy");

  const AlgebraElement dy{{0, 0}, {0, 1}, d->normal_form({0, 0}, {0, 1}, {1})};
  const AlgebraElement dx{{0, 1}, {1, 1}, d->normal_form({0, 1}, {1, 1}, {0})};
  const auto yx = multiply(*d, dy, dx);
  CHECK(yx.coords == d->normal_form({0, 0}, {1, 1}, {0, 1}));
  CHECK_THROWS_AS(multiply(*d, dy, dy), DegreeError);

  const auto unit = multiply(*d, local_unit({0, 0}), dy);
  CHECK(unit.coords == dy.coords);
}

TEST_CASE("associativity and unit laws on sampled triples") {
  for (auto a : {AlgebraPtr(free_xy()), AlgebraPtr(q_poly_xy(3)), AlgebraPtr(poly_xy(Field::prime(5)))}) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
      Index i{0, 0};
      Index j{static_cast<long>(rng() % 3), static_cast<long>(rng() % 3)};
      Index k = j + Index{static_cast<long>(rng() % 2), static_cast<long>(rng() % 2)};
      Index l = k + Index{static_cast<long>(rng() % 2), static_cast<long>(rng() % 2)};
      for (std::size_t p = 0; p < a->dim(i, j); ++p)
        for (std::size_t q = 0; q < a->dim(j, k); ++q)
          for (std::size_t r = 0; r < a->dim(k, l); ++r) {
            const Vec left = a->multiply(i, k, l, a->multiply_basis(i, j, k, p, q), unit_vec(r));
            const Vec right = a->multiply(i, j, l, unit_vec(p), a->multiply_basis(j, k, l, q, r));
            CHECK(left == right);
          }
      for (std::size_t p = 0; p < a->dim(i, j); ++p) {
        CHECK(a->multiply_basis(i, i, j, 0, p) == unit_vec(p));
        CHECK(a->multiply_basis(i, j, j, p, 0) == unit_vec(p));
      }
    }
  }
}

TEST_CASE("induction oracle agrees with component dimensions") {
  for (auto a : {free_xy(), poly_xy()}) {
    const auto w = box(a, {0, 0}, {4, 3});
    for (const auto& i : w.elements()) {
      std::vector<AlgebraElement> star;
      for (const auto& arrow : a->arrows_into(i + Index{1, 0})) {
        if (arrow.source == i) star.push_back({arrow.source, arrow.target, arrow.element});
      }
      for (const auto& arrow : a->arrows_into(i + Index{0, 1})) {
        if (arrow.source == i) star.push_back({arrow.source, arrow.target, arrow.element});
      }
      for (const auto& j : w.elements()) {
        if (a->poset().interval_size(i, j) > 20) continue;
        CHECK(dim_via_induction(*a, i, j, star) == a->dim(i, j));
      }
    }
  }
}

TEST_CASE("graded-ring construction validates degrees") {
  GradedRingPresentation s;
  s.rank = 2;
  s.generators = {{"x", {1, 0}}, {"z", {0, 0}}};
  CHECK_THROWS_AS(from_graded_ring(s), DegreeError);
  s.generators = {{"x", {1, 0}}, {"y", {0, 1}}};
  s.relations = {{{1, 0}, {{Scalar(1), {0, 1}}, {Scalar(-1), {1, 0}}}}};
  CHECK_THROWS_AS(from_graded_ring(s), DegreeError);

  GradedRingPresentation k;
  k.rank = 1;
  auto base = from_graded_ring(k);
  CHECK(base->dim({0}, {0}) == 1);
  CHECK(base->dim({0}, {1}) == 0);
}

TEST_CASE("maximal ideal excludes the diagonal") {
  auto d = poly_xy();
  auto b = free_xy();
  CHECK(maximal_ideal_component(*d, {0, 0}, {0, 0}).dimension() == 0);
  CHECK(maximal_ideal_component(*d, {0, 0}, {1, 0}).labels == std::vector<std::string>{"x"});
  CHECK(maximal_ideal_component(*b, {0, 0}, {1, 1}).dimension() == 2);
  CHECK(check_connected(*d).verdict == Verdict::Verified);
}

TEST_CASE("q-commuting relation keeps a monomial basis") {
  auto q = q_poly_xy(1);
  auto p = poly_xy();
  auto q3 = q_poly_xy(3);
  const auto w = box(p, {0, 0}, {4, 4});
  for (const auto& j : w.elements()) {
    CHECK(q->dim({0, 0}, j) == p->dim({0, 0}, j));
    CHECK(q3->dim({0, 0}, j) == 1);
  }
  const Vec yx = q3->normal_form({0, 0}, {1, 1}, {1, 0});
  CHECK(yx == Vec{{0, mpq_class(1, 3)}});
}

TEST_CASE("caching returns identical bases") {
  auto b = free_xy();
  const auto first = labels(*b, {1, 1}, {3, 2});
  CHECK(labels(*b, {1, 1}, {3, 2}) == first);
  CHECK(labels(*b, {0, 0}, {2, 1}) == first);
}

TEST_CASE("explicit arrows on a finite chain") {
  auto chain = Poset::finite({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  std::vector<Generator> gens = {{"f", Step::arrow({0}, {1})}, {"g", Step::arrow({1}, {2})},
                                 {"h", Step::arrow({0}, {2})}};
  std::vector<Relation> rels = {{{}, {{Scalar(1), {0, 1}}, {Scalar(-1), {2}}}}};
  PresentedAlgebra a("chain", chain, Field::rationals(), gens, rels);
  CHECK(a.kind() == PresentedAlgebra::Kind::Explicit);
  CHECK(a.dim({0}, {2}) == 1);
  CHECK(a.basis_words({0}, {2}) == std::vector<Word>{{2}});
  CHECK(a.normal_form({0}, {2}, {0, 1}) == Vec{{0, 1}});
  CHECK_THROWS_AS(PresentedAlgebra("bad", chain, Field::rationals(), {{"f", Step::arrow({1}, {0})}}, {}),
                  DegreeError);
}

TEST_CASE("resource ceilings are structured errors") {
  GradedRingPresentation s;
  s.rank = 2;
  s.generators = {{"x", {1, 0}}, {"y", {0, 1}}};
  auto b = from_graded_ring(s, AlgebraLimits{1000, 50});
  CHECK(b->dim({0, 0}, {3, 2}) == 10);
  CHECK_THROWS_AS(b->dim({0, 0}, {4, 4}), ResourceLimitError);
}
