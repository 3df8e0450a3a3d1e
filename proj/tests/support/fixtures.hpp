#pragma once

#include <memory>

#include "ialg/algebra.hpp"
#include "ialg/gradedmod.hpp"

namespace ialg::testing {

/// Delooping of k<x,y> with deg x = (1,0), deg y = (0,1).
inline std::shared_ptr<const PresentedAlgebra> free_xy(Field f = Field::rationals()) {
  GradedRingPresentation s;
  s.name = "free_xy";
  s.rank = 2;
  s.field = f;
  s.generators = {{"x", {1, 0}}, {"y", {0, 1}}};
  return from_graded_ring(s);
}

/// xy = q yx; q = 1 gives the polynomial ring.
inline std::shared_ptr<const PresentedAlgebra> q_poly_xy(long q = 1, Field f = Field::rationals()) {
  GradedRingPresentation s;
  s.name = q == 1 ? "poly_xy" : "q_poly_xy";
  s.rank = 2;
  s.field = f;
  s.generators = {{"x", {1, 0}}, {"y", {0, 1}}};
  s.relations = {{{1, 1}, {{Scalar(1), {0, 1}}, {Scalar(-q), {1, 0}}}}};
  return from_graded_ring(s);
}

inline std::shared_ptr<const PresentedAlgebra> poly_xy(Field f = Field::rationals()) {
  return q_poly_xy(1, f);
}

inline Window box(const AlgebraPtr& a, Index lo, Index hi) {
  return Window::box(a->poset_ptr(), std::move(lo), std::move(hi));
}

inline PresentationPtr free_at(const AlgebraPtr& a, const Index& i) {
  return ModulePresentation::free("P" + a->poset().format(i), a, {i});
}

/// coker(P(i+(1,0)) + P(i+(0,1)) -> P(i)) by (x, y) on a rank-2 delooping.
inline PresentationPtr simple_xy(const std::shared_ptr<const PresentedAlgebra>& a, const Index& i) {
  const Index dx = i + Index{1, 0}, dy = i + Index{0, 1};
  return ModulePresentation::cyclic_quotient(
      "S" + a->poset().format(i), a, i,
      {{dx, a->normal_form(i, dx, {0})}, {dy, a->normal_form(i, dy, {1})}});
}

/// P(1,1) -> P(1,0) + P(0,1) given by (y, -x).
inline ModuleMap koszul_map(const std::shared_ptr<const PresentedAlgebra>& a) {
  ModuleMap m;
  m.source.degrees = {{1, 1}};
  m.target.degrees = {{1, 0}, {0, 1}};
  m.entries = {{a->normal_form({1, 0}, {1, 1}, {1})},
               {scaled(a->field(), Scalar(-1), a->normal_form({0, 1}, {1, 1}, {0}))}};
  return m;
}

/// P(1,0) + P(0,1) -> P(0,0) given by (x, y).
inline ModuleMap xy_map(const std::shared_ptr<const PresentedAlgebra>& a) {
  ModuleMap m;
  m.source.degrees = {{1, 0}, {0, 1}};
  m.target.degrees = {{0, 0}};
  m.entries = {{a->normal_form({0, 0}, {1, 0}, {0}), a->normal_form({0, 0}, {0, 1}, {1})}};
  return m;
}

}  // namespace ialg::testing
