#include <set>

#include "doctest.h"

#include "cohomlab/galoisdict.hpp"

using namespace cohomlab;

namespace {

using Vec = std::vector<std::int64_t>;

Vec act(const Mat2& g, const Vec& v, std::int64_t q) {
  return {(g.a() * v[0] + g.b() * v[1]) % q, (g.c() * v[0] + g.d() * v[1]) % q};
}

std::set<Vec> multiples(const Vec& v, std::int64_t q) {
  std::set<Vec> out;
  for (std::int64_t k = 0; k < q; ++k) out.insert({v[0] * k % q, v[1] * k % q});
  return out;
}

// Stable cyclic submodules of the given order, each as its set of elements.
std::set<std::set<Vec>> stable_lines_by_enumeration(const MatGroup& g, std::int64_t order) {
  std::int64_t q = g.context().modulus();
  std::set<std::set<Vec>> out;
  for (std::int64_t x = 0; x < q; ++x)
    for (std::int64_t y = 0; y < q; ++y) {
      std::set<Vec> c = multiples({x, y}, q);
      if (static_cast<std::int64_t>(c.size()) != order) continue;
      bool stable = true;
      for (const Mat2& s : g.generators()) stable = stable && c.count(act(s, {x, y}, q)) > 0;
      if (stable) out.insert(c);
    }
  return out;
}

std::set<Vec> elements_of(const Submodule& s) {
  std::int64_t q = s.context().modulus();
  std::set<Vec> out{{0, 0}};
  for (const auto& gen : s.generators()) {
    std::set<Vec> next;
    for (const Vec& v : out)
      for (const Vec& w : multiples(gen.entries(), q)) next.insert({(v[0] + w[0]) % q, (v[1] + w[1]) % q});
    out = next;
  }
  return out;
}

}  // namespace

TEST_CASE("fixed points") {
  ModulusContext f3(3, 1);
  CHECK(fixed_points(close_group({}, f3)).order() == 9);
  Submodule f = fixed_points(close_group({Mat2::diagonal(f3, 1, 2)}, f3));
  CHECK(f.order() == 3);
  CHECK(f.contains(ResidueVector(f3, {1, 0})));
  CHECK(fixed_points(general_linear_group(f3)).is_zero());

  MatGroup eg = make_example_group(3).group;
  std::set<Vec> expected;
  for (std::int64_t x = 0; x < 9; ++x)
    for (std::int64_t y = 0; y < 9; ++y) {
      bool fixed = true;
      for (const Mat2& s : eg.elements()) fixed = fixed && act(s, {x, y}, 9) == Vec{x, y};
      if (fixed) expected.insert({x, y});
    }
  CHECK(elements_of(fixed_points(eg)) == expected);
}

TEST_CASE("determinant image") {
  ExampleGroup eg = make_example_group(3);
  CHECK(det_image(reduce_mod(eg.group, 1)) == std::vector<Residue>{1, 2});
  CHECK(det_image(close_group({}, ModulusContext(3, 1))) == std::vector<Residue>{1});
  CHECK(eg.delta1.det() == 8);
  CHECK(eg.delta2.det() == 7);
  CHECK(eg.delta3.det() == 1);
  CHECK(det_image(eg.group).size() == 6);
}

TEST_CASE("kernel of the determinant") {
  ModulusContext f3(3, 1);
  MatGroup g1 = reduce_mod(make_example_group(3).group, 1);
  CHECK(det_kernel_trivial(g1));
  CHECK(det_kernel_trivial(close_group({}, f3)));
  CHECK_FALSE(det_kernel_trivial(close_group({Mat2(f3, 1, 1, 0, 1)}, f3)));
  CHECK_THROWS_AS(det_kernel_trivial(make_example_group(3).group), WrongLevel);
}

TEST_CASE("stable cyclic submodules") {
  MatGroup eg = make_example_group(3).group;
  auto c3 = stable_cyclic_submodules(eg, 3);
  CHECK(c3.size() == 2);
  CHECK(stable_cyclic_submodules(eg, 9).empty());

  std::set<std::set<Vec>> got;
  for (const Submodule& s : c3) got.insert(elements_of(s));
  CHECK(got == stable_lines_by_enumeration(eg, 3));
  CHECK(stable_lines_by_enumeration(eg, 9).empty());

  ModulusContext f3(3, 1);
  CHECK(stable_cyclic_submodules(close_group({}, f3), 3).size() == 4);
  CHECK_THROWS_AS(stable_cyclic_submodules(eg, 27), InvalidInput);
  CHECK_THROWS_AS(stable_cyclic_submodules(eg, 6), InvalidInput);

  ModulusContext z9(3, 2);
  MatGroup upper = full_upper_triangular_group(z9);
  for (std::int64_t order : {3, 9}) {
    std::set<std::set<Vec>> found;
    for (const Submodule& s : stable_cyclic_submodules(upper, order)) found.insert(elements_of(s));
    CHECK(found == stable_lines_by_enumeration(upper, order));
  }
}

TEST_CASE("isogeny condition") {
  ModulusContext z9(3, 2);
  CHECK_FALSE(isogeny_condition_p3(make_example_group(3).group));
  CHECK(isogeny_condition_p3(close_group({}, z9)));
  MatGroup upper = full_upper_triangular_group(z9);
  CHECK_FALSE(isogeny_condition_p3(upper));

  // by enumeration: every stable line of order 3 meets every stable line of order 9
  auto c1s = stable_lines_by_enumeration(upper, 9);
  auto c2s = stable_lines_by_enumeration(upper, 3);
  REQUIRE(!c1s.empty());
  bool disjoint_pair = false;
  for (const auto& c1 : c1s)
    for (const auto& c2 : c2s) {
      std::size_t common = 0;
      for (const Vec& v : c2) common += c1.count(v);
      disjoint_pair = disjoint_pair || common == 1;
    }
  CHECK_FALSE(disjoint_pair);
  CHECK_THROWS_AS(isogeny_condition_p3(close_group({}, ModulusContext(3, 1))), WrongLevel);
}

TEST_CASE("condition report") {
  ConditionReport r = evaluate_main_theorem_conditions(make_example_group(3).group);
  CHECK_FALSE(r.zeta_condition_holds);
  CHECK(r.det_image_order_mod_p == 2);
  CHECK(r.has_fixed_point_of_exact_order_p);
  CHECK(r.det_kernel_trivial_mod_p);
  CHECK(r.stable_cyclic_order_p.size() == 2);
  CHECK(r.stable_cyclic_order_p2.empty());
  CHECK_FALSE(r.isogeny_condition_p3);

  ModulusContext z9(3, 2);
  CHECK_FALSE(evaluate_main_theorem_conditions(general_linear_group(z9)).has_fixed_point_of_exact_order_p);
  CHECK(evaluate_main_theorem_conditions(close_group({Mat2(z9, 1, 1, 0, 1)}, z9)).det_image_order_mod_p == 1);
  CHECK_THROWS_AS(evaluate_main_theorem_conditions(close_group({}, ModulusContext(3, 1))), WrongLevel);
}
