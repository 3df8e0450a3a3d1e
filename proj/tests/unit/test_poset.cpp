#include "doctest.h"

#include "ialg/errors.hpp"
#include "ialg/poset.hpp"

using namespace ialg;

TEST_CASE("lattice order and intervals") {
  auto z2 = Poset::lattice(2);
  CHECK(z2->leq({1, 1}, {2, 1}));
  CHECK_FALSE(z2->less({1, 1}, {1, 1}));
  CHECK_FALSE(z2->leq({2, 0}, {1, 1}));
  CHECK(z2->interval({0, 0}, {2, 1}).size() == 6);
  CHECK(z2->interval({0, 0}, {0, 0}).size() == 1);
  CHECK(z2->interval({1, 0}, {0, 1}).empty());
  CHECK(z2->upper_bound({2, 0}, {1, 3}) == Index{2, 3});
  CHECK(z2->upper_bound({0, 0}, {3, 1}) == Index{3, 1});
  CHECK(z2->validate().verdict == Verdict::Verified);
  CHECK_THROWS_AS(z2->leq({1}, {1, 1}), PosetError);
}

TEST_CASE("interval sizes are products of side lengths") {
  auto z3 = Poset::lattice(3);
  CHECK(z3->interval_size({0, 0, 0}, {1, 2, 3}) == 2 * 3 * 4);
  CHECK(z3->interval({0, 0, 0}, {1, 2, 3}).size() == 24);
}

TEST_CASE("windows list elements in deglex order") {
  auto z2 = Poset::lattice(2);
  auto w = Window::box(z2, {0, 0}, {1, 1});
  CHECK(w.elements() == std::vector<Index>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  CHECK(Window::box(z2, {0, 0}, {2, 0}).elements() == std::vector<Index>{{0, 0}, {1, 0}, {2, 0}});
  auto big = Window::box(z2, {0, 0}, {2, 2});
  CHECK(big.strict_upper_set({1, 1}) == std::vector<Index>{{1, 2}, {2, 1}, {2, 2}});
  CHECK(big.strict_upper_set({2, 2}).empty());
  CHECK(Window::box(z2, {0, 0}, {3, 1}).strict_upper_set({1, 1}) == std::vector<Index>{{2, 1}, {3, 1}});
  CHECK_THROWS_AS(Window::box(z2, {0, 0}, {200, 200}), ResourceLimitError);
  CHECK(w.describe() == "[(0,0),(1,1)]");
}

TEST_CASE("window order is a linear extension") {
  auto z2 = Poset::lattice(2);
  auto w = Window::box(z2, {-1, -1}, {3, 3});
  const auto& e = w.elements();
  for (std::size_t a = 0; a < e.size(); ++a) {
    for (std::size_t b = 0; b < e.size(); ++b) {
      if (z2->less(e[a], e[b])) CHECK(a < b);
    }
  }
}

TEST_CASE("finite posets are validated exhaustively") {
  auto chain = Poset::finite({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  CHECK(chain->validate().verdict == Verdict::Verified);
  CHECK(chain->leq(Index{0}, Index{2}));
  auto anti = Poset::finite_unchecked({"a", "b"}, {});
  const auto out = anti->validate();
  CHECK(out.verdict == Verdict::Refuted);
  CHECK_THROWS_AS(Poset::finite({"a", "b"}, {}), PosetError);
  CHECK_THROWS_AS(Poset::finite({"a", "b"}, {{"a", "b"}, {"b", "a"}}), PosetError);
  CHECK(chain->describe() == "finite {a,b,c} {a<b, b<c}");
}

TEST_CASE("product of a lattice and a chain") {
  auto p = Poset::product(Poset::lattice(1), Poset::finite({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}));
  CHECK(p->arity() == 2);
  CHECK(p->leq({0, 0}, {1, 2}));
  CHECK_FALSE(p->leq({0, 2}, {1, 1}));
  CHECK(p->interval({0, 0}, {1, 2}).size() == 6);
  CHECK(p->format({3, 1}) == "(3,b)");
  CHECK(p->upper_bound({0, 2}, {1, 0}) == Index{1, 2});
  CHECK(p->validate().verdict == Verdict::Verified);
}
