#include <map>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"

#include "cohomlab/brute_force.hpp"
#include "cohomlab/cohom.hpp"

using namespace cohomlab;

namespace {

using Vec = std::vector<std::int64_t>;

struct Counts {
  std::int64_t z1 = 0, b1 = 0, local = 0;
};

std::int64_t product(const std::vector<std::int64_t>& v) {
  return std::accumulate(v.begin(), v.end(), std::int64_t{1}, std::multiplies<>());
}

std::vector<Vec> all_vectors(std::int64_t q) {
  std::vector<Vec> out;
  for (std::int64_t x = 0; x < q; ++x)
    for (std::int64_t y = 0; y < q; ++y) out.push_back({x, y});
  return out;
}

Vec act(const Mat2& g, const Vec& v, std::int64_t q) {
  return {(g.a() * v[0] + g.b() * v[1]) % q, (g.c() * v[0] + g.d() * v[1]) % q};
}

Vec add(const Vec& u, const Vec& v, std::int64_t q) { return {(u[0] + v[0]) % q, (u[1] + v[1]) % q}; }

// Natural-module counts by assigning values to the generators, propagating
// Z_{sg} = Z_s + s Z_g from the identity and testing the relation on all
// pairs. Local triviality is tested against Im(g - I) by enumeration.
Counts oracle_counts(const MatGroup& g) {
  std::int64_t q = g.context().modulus();
  std::vector<Vec> vs = all_vectors(q);
  const auto& gens = g.generators();
  std::size_t k = gens.size();

  std::vector<std::set<Vec>> images(g.order());
  for (std::size_t e = 0; e < g.order(); ++e) {
    const Mat2& x = g.element(e);
    for (const Vec& v : vs) {
      Vec w = act(x, v, q);
      images[e].insert({(w[0] - v[0] + q) % q, (w[1] - v[1] + q) % q});
    }
  }

  Counts c;
  std::set<std::vector<Vec>> coboundaries;
  for (const Vec& v : vs) {
    std::vector<Vec> t;
    for (const Mat2& x : g.elements()) {
      Vec w = act(x, v, q);
      t.push_back({(w[0] - v[0] + q) % q, (w[1] - v[1] + q) % q});
    }
    coboundaries.insert(t);
  }
  c.b1 = static_cast<std::int64_t>(coboundaries.size());

  std::size_t total = 1;
  for (std::size_t i = 0; i < k; ++i) total *= vs.size();
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<Vec> gv(k);
    std::size_t rest = code;
    for (std::size_t i = 0; i < k; ++i) {
      gv[i] = vs[rest % vs.size()];
      rest /= vs.size();
    }
    std::vector<std::optional<Vec>> z(g.order());
    z[g.identity_index()] = Vec{0, 0};
    std::vector<std::size_t> queue{g.identity_index()};
    bool ok = true;
    for (std::size_t head = 0; head < queue.size() && ok; ++head) {
      std::size_t e = queue[head];
      for (std::size_t i = 0; i < k; ++i) {
        std::size_t s = *g.index_of(gens[i]);
        std::size_t f = g.multiply(s, e);
        Vec val = add(gv[i], act(gens[i], *z[e], q), q);
        if (!z[f]) {
          z[f] = val;
          queue.push_back(f);
        } else if (*z[f] != val) {
          ok = false;
          break;
        }
      }
    }
    for (std::size_t a = 0; a < g.order() && ok; ++a)
      for (std::size_t b = 0; b < g.order() && ok; ++b)
        ok = *z[g.multiply(a, b)] == add(*z[a], act(g.element(a), *z[b], q), q);
    if (!ok) continue;
    ++c.z1;
    bool local = true;
    for (std::size_t e = 0; e < g.order() && local; ++e) local = images[e].count(*z[e]) > 0;
    c.local += local;
  }
  return c;
}

Cocycle example_cocycle(const ExampleGroup& eg) {
  const ModulusContext& ctx = eg.group.context();
  GModule m = GModule::natural(eg.group);
  Cocycle z = Cocycle::zero(eg.group, m);
  for (std::size_t i = 0; i < eg.group.order(); ++i) {
    const TripleParam& t = eg.labels[i];
    z.values[i] = ResidueVector(ctx, {0, (t.a ? -1 : 1) * ctx.p() * t.c});
  }
  return z;
}

}  // namespace

TEST_CASE("cohomology of the upper unipotent group of order 3") {
  ModulusContext f3(3, 1);
  MatGroup g = close_group({Mat2(f3, 1, 1, 0, 1)}, f3);
  CHECK(cocycle_space(g).order() == 9);
  CHECK(coboundary_space(g).order() == 3);
  CHECK(h1(g) == Vec{3});
  CHECK(locally_trivial_subspace(g) == coboundary_space(g));
  CHECK(h1_loc(g).h1loc.empty());
  CHECK(h1_loc_via_restrictions(g).empty());
  CHECK(quotient_invariants(cocycle_space(g), coboundary_space(g)) == Vec{3});

  Counts c = oracle_counts(g);
  CHECK(c.z1 == 9);
  CHECK(c.b1 == 3);
  CHECK(c.local == 3);
}

TEST_CASE("trivial group") {
  ModulusContext f3(3, 1);
  MatGroup g = close_group({}, f3);
  CHECK(cocycle_space(g).is_zero());
  CHECK(coboundary_space(g).is_zero());
  CHECK(locally_trivial_subspace(g).is_zero());
  CHECK(h1(g).empty());
  CHECK(h1_loc(g).h1loc.empty());
  CHECK(h1_loc_via_restrictions(g).empty());
  CHECK(is_coboundary(Cocycle::zero(g, GModule::natural(g))));
}

TEST_CASE("GL2(F3) has no first cohomology") {
  MatGroup g = general_linear_group(ModulusContext(3, 1));
  CHECK(h1(g).empty());
  Counts c = oracle_counts(g);
  CHECK(c.z1 == c.b1);
  CHECK(c.z1 == cocycle_space(g).order());
}

TEST_CASE("counts agree with the test oracle on small groups") {
  std::vector<MatGroup> groups;
  for (const MatGroup& h : enumerate_subgroups(general_linear_group(ModulusContext(2, 1)))) groups.push_back(h);
  for (const MatGroup& h : enumerate_subgroups(general_linear_group(ModulusContext(3, 1))))
    if (h.generators().size() <= 2) groups.push_back(h);
  ModulusContext z4(2, 2);
  groups.push_back(close_group({Mat2(z4, 1, 1, 0, 1), Mat2(z4, 1, 0, 2, 1)}, z4));
  groups.push_back(close_group({Mat2(z4, 1, 0, 0, 3), Mat2(z4, 1, 2, 0, 1)}, z4));
  groups.push_back(close_group({Mat2(z4, 3, 0, 0, 3)}, z4));
  ModulusContext z9(3, 2);
  groups.push_back(close_group({Mat2(z9, 1, 3, 0, 1), Mat2::diagonal(z9, 1, 8)}, z9));
  groups.push_back(close_group({Mat2(z9, 1, 0, 3, 1), Mat2::diagonal(z9, 4, 4)}, z9));

  for (const MatGroup& g : groups) {
    CAPTURE(g.to_string());
    Counts c = oracle_counts(g);
    CohomologyReport r = h1_loc(g);
    CHECK(product(r.z1) == c.z1);
    CHECK(product(r.b1) == c.b1);
    CHECK(product(r.h1) * c.b1 == c.z1);
    CHECK(product(r.h1loc) * c.b1 == c.local);
    CHECK(h1_loc_via_restrictions(g) == r.h1loc);
  }
}

TEST_CASE("the example cocycle") {
  for (std::int64_t p : {3, 5, 7}) {
    ExampleGroup eg = make_example_group(p);
    Cocycle z = example_cocycle(eg);
    CHECK(z.satisfies_relation());
    CHECK(is_locally_trivial(z));
    CHECK_FALSE(is_coboundary(z));
    CohomologyReport r = h1_loc(eg.group);
    CHECK_FALSE(r.h1loc.empty());
    CHECK(h1_loc_via_restrictions(eg.group) == r.h1loc);
    REQUIRE(r.witnesses.size() == r.h1loc.size());
    for (const Cocycle& w : r.witnesses) {
      CHECK(w.satisfies_relation());
      CHECK(is_locally_trivial(w));
      CHECK_FALSE(is_coboundary(w));
    }
  }
  CHECK(h1_loc(make_example_group(3).group).h1loc == Vec{3});
}

TEST_CASE("coboundaries are recognised") {
  ExampleGroup eg = make_example_group(3);
  GModule m = GModule::natural(eg.group);
  const ModulusContext& ctx = eg.group.context();
  CHECK(*is_coboundary(Cocycle::zero(eg.group, m)) == ResidueVector(ctx, 2));
  Cocycle b = Cocycle::coboundary(eg.group, m, ResidueVector(ctx, {1, 0}));
  auto v = is_coboundary(b);
  REQUIRE(v);
  CHECK(Cocycle::coboundary(eg.group, m, *v).values == b.values);
  CHECK(is_locally_trivial(b));
}

TEST_CASE("restriction") {
  ExampleGroup eg = make_example_group(3);
  const ModulusContext& ctx = eg.group.context();
  Cocycle z = example_cocycle(eg);
  MatGroup trivial = close_group({}, ctx);
  CHECK(restriction(z, trivial).is_zero());

  MatGroup d3 = close_group({eg.delta3}, ctx);
  Cocycle r = restriction(z, d3);
  for (std::int64_t c = 0; c < 3; ++c) CHECK(r.at(eg.delta3.pow(c)) == ResidueVector(ctx, {0, 3 * c}));
  CHECK(r.satisfies_relation());

  MatGroup outside = close_group({Mat2(ctx, 1, 1, 0, 1)}, ctx);
  CHECK_THROWS_AS(restriction(z, outside), NotASubgroup);
}

TEST_CASE("coordinate lines") {
  ModulusContext z9(3, 2);
  MatGroup d = full_diagonal_group(z9);
  GModule l0 = GModule::line(d, 0), l1 = GModule::line(d, 1);
  CHECK(l0.rank() == 1);
  CHECK(l0.action(Mat2::diagonal(z9, 2, 5)).at(0, 0) == 2);
  CHECK(l1.action(Mat2::diagonal(z9, 2, 5)).at(0, 0) == 5);
  CHECK(h1_loc_invariants(d, l0).empty());
  CHECK(h1_loc_invariants(d, l1).empty());
  CHECK(h1_loc(d).h1loc.empty());
  CHECK_THROWS_AS(GModule::line(general_linear_group(ModulusContext(3, 1)), 0), InvalidInput);

  // direct sum: |H^1_loc(M)| is the product over the two lines
  std::mt19937_64 rng(19);
  std::vector<Mat2> ds = full_diagonal_group(z9).elements();
  for (int trial = 0; trial < 10; ++trial) {
    MatGroup h = close_group({ds[rng() % ds.size()], ds[rng() % ds.size()]}, z9);
    CHECK(product(h1(h)) == product(h1(h, GModule::line(h, 0))) * product(h1(h, GModule::line(h, 1))));
  }
}

TEST_CASE("action image and inflation") {
  ExampleGroup eg = make_example_group(3);
  GModule red = GModule::reduced(eg.group, 1);
  ActionImage ai = action_image(eg.group, red);
  CHECK(ai.image.order() == 2);
  CHECK(ai.kernel.order() == 9);
  CHECK(ai.image.order() * ai.kernel.order() == eg.group.order());

  ActionImage nat = action_image(eg.group, GModule::natural(eg.group));
  CHECK(nat.kernel.order() == 1);
  CHECK(nat.image == eg.group);

  // coboundaries inflate to coboundaries
  Cocycle y = Cocycle::coboundary(ai.image, ai.module, ResidueVector(ai.image.context(), {1, 1}));
  Cocycle z = inflation(y, eg.group, red, ai.kernel);
  CHECK(z.satisfies_relation());
  CHECK(z.values == Cocycle::coboundary(eg.group, red, ResidueVector(ai.image.context(), {1, 1})).values);
  CHECK_THROWS_AS(inflation(y, eg.group, red, close_group({}, eg.group.context())), StabilizerMismatch);
  CHECK_THROWS_AS(inflation(Cocycle::zero(eg.group, GModule::natural(eg.group)), eg.group, red, ai.kernel),
                  InvalidInput);

  // the example group lifted to Z/27 with a nontrivial kernel at level 2
  ModulusContext z27(3, 3);
  MatGroup lifted = close_group({Mat2::diagonal(z27, 1, -1), Mat2::diagonal(z27, 4, 4), Mat2(z27, 1, 6, 3, 1),
                                 Mat2(z27, 10, 0, 0, 1)},
                                z27);
  GModule level2 = GModule::reduced(lifted, 2);
  ActionImage li = action_image(lifted, level2);
  CHECK(li.image == eg.group);
  CHECK(li.kernel.order() > 1);
  CohomologyReport quotient = h1_loc(li.image, li.module);
  CHECK(quotient.h1loc == Vec{3});
  CHECK(h1_loc_invariants(lifted, level2) == quotient.h1loc);
  CHECK(h1_loc_via_restrictions(lifted, level2) == quotient.h1loc);
  for (const Cocycle& w : quotient.witnesses) {
    Cocycle inflated = inflation(w, lifted, level2, li.kernel);
    CHECK(inflated.satisfies_relation());
    CHECK(is_locally_trivial(inflated));
    CHECK_FALSE(is_coboundary(inflated));
  }
}

TEST_CASE("conjugation invariance") {
  std::mt19937_64 rng(23);
  ExampleGroup eg = make_example_group(3);
  std::vector<Mat2> gl = invertible_matrices(eg.group.context());
  Vec expected = h1_loc(eg.group).h1loc;
  Vec expected_h1 = h1(eg.group);
  for (int trial = 0; trial < 5; ++trial) {
    MatGroup c = conjugate(eg.group, gl[rng() % gl.size()]);
    CHECK(h1_loc(c).h1loc == expected);
    CHECK(h1(c) == expected_h1);
  }
}

TEST_CASE("cyclic groups have trivial local cohomology") {
  std::mt19937_64 rng(29);
  for (auto [p, n] : {std::pair{3, 1}, {3, 2}, {5, 1}, {5, 2}, {2, 3}}) {
    ModulusContext ctx(p, n);
    std::vector<Mat2> gl = invertible_matrices(ctx);
    for (int trial = 0; trial < 8; ++trial) {
      MatGroup g = close_group({gl[rng() % gl.size()]}, ctx);
      CHECK(h1_loc(g).h1loc.empty());
      CHECK(h1_loc_via_restrictions(g).empty());
    }
  }
}

TEST_CASE("normalizing a locally trivial cocycle") {
  ModulusContext z9(3, 2);
  Mat2 rho = Mat2::diagonal(z9, 1, 2);
  MatGroup g = close_group({rho, Mat2(z9, 1, 0, 3, 1), Mat2(z9, 1, 3, 0, 1)}, z9);
  SpecialSubgroups parts = special_subgroups(g);
  REQUIRE(parts.lower.order() > 1);
  GModule m = GModule::natural(g);

  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    ResidueVector v(z9, {static_cast<std::int64_t>(rng() % 9), static_cast<std::int64_t>(rng() % 9)});
    Cocycle z = Cocycle::coboundary(g, m, v);
    NormalizedCocycle nc = normalize_locally_trivial_cocycle(z, rho, parts);
    CHECK(nc.j == 1);
    CHECK(nc.tau_lower == Mat2(z9, 1, 0, 3, 1));
    CHECK(nc.cocycle.satisfies_relation());
    // differs from z by a coboundary
    CHECK(is_coboundary(nc.cocycle - z));
    std::vector<Mat2> du = parts.diagonal.elements();
    du.insert(du.end(), parts.upper.elements().begin(), parts.upper.elements().end());
    MatGroup dug = subgroup_generated(g, du);
    for (const Mat2& x : dug.elements()) CHECK(nc.cocycle.at(x).is_zero());
    CHECK(nc.cocycle.at(nc.tau_lower) == ResidueVector(z9, {0, 3 * nc.beta}));
  }

  CHECK(normalize_locally_trivial_cocycle(Cocycle::zero(g, m), rho, parts).cocycle.is_zero());

  // a locally trivial class on a diagonal group normalizes to zero
  MatGroup d = close_group({rho}, z9);
  Cocycle zd = Cocycle::coboundary(d, GModule::natural(d), ResidueVector(z9, {4, 5}));
  CHECK(normalize_locally_trivial_cocycle(zd, rho, special_subgroups(d)).cocycle.is_zero());

  // hypothesis failures
  ExampleGroup eg = make_example_group(3);
  Cocycle ze = example_cocycle(eg);
  CHECK_THROWS_AS(normalize_locally_trivial_cocycle(ze, eg.delta1, special_subgroups(eg.group)), HypothesisViolated);
  CHECK_THROWS_AS(normalize_locally_trivial_cocycle(Cocycle::zero(g, m), Mat2::diagonal(z9, 1, 4), parts),
                  HypothesisViolated);
  CHECK_THROWS_AS(normalize_locally_trivial_cocycle(Cocycle::zero(g, m), Mat2::diagonal(z9, 2, 1), parts),
                  HypothesisViolated);
  MatGroup unip = close_group({Mat2(z9, 1, 0, 3, 1), Mat2(z9, 1, 3, 0, 1)}, z9);
  CHECK_THROWS_AS(
      normalize_locally_trivial_cocycle(Cocycle::zero(unip, GModule::natural(unip)), rho, special_subgroups(unip)),
      HypothesisViolated);
  try {
    normalize_locally_trivial_cocycle(ze, eg.delta1, special_subgroups(eg.group));
  } catch (const HypothesisViolated& e) {
    CHECK(std::string(e.what()).find("order 2") != std::string::npos);
  }
}

TEST_CASE("parallel and serial paths agree") {
  ExampleGroup eg = make_example_group(5);
  CHECK(h1_loc_via_restrictions(eg.group, Execution::serial) == h1_loc_via_restrictions(eg.group, Execution::parallel));
  MatGroup g = make_example_group(3).group;
  BruteForceResult s = brute_force_cohomology(g, Execution::serial);
  BruteForceResult q = brute_force_cohomology(g, Execution::parallel);
  CHECK(s.h1loc == q.h1loc);
  CHECK(s.z1_order == q.z1_order);
  CHECK(s.h1loc == Vec{3});
}
