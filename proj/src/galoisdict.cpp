#include "cohomlab/galoisdict.hpp"

#include <algorithm>

namespace cohomlab {

Submodule fixed_points(const MatGroup& g) {
  const ModulusContext& ctx = g.context();
  const std::vector<Mat2>& gens = g.generators();
  ResidueMatrix stacked(ctx, 2 * gens.size(), 2);
  for (std::size_t k = 0; k < gens.size(); ++k) {
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) stacked.set(2 * k + i, j, gens[k].entry(i, j) - (i == j ? 1 : 0));
    }
  }
  return kernel(stacked);
}

std::vector<Residue> det_image(const MatGroup& g) {
  std::vector<Residue> dets;
  for (const Mat2& e : g.elements()) dets.push_back(e.det());
  std::sort(dets.begin(), dets.end());
  dets.erase(std::unique(dets.begin(), dets.end()), dets.end());
  return dets;
}

bool det_kernel_trivial(const MatGroup& g1) {
  if (g1.context().n() != 1) throw WrongLevel("det_kernel_trivial expects a level-1 group");
  return std::none_of(g1.elements().begin(), g1.elements().end(),
                      [](const Mat2& e) { return e.det() == 1 && !e.is_identity(); });
}

std::vector<Submodule> stable_cyclic_submodules(const MatGroup& g, std::int64_t order) {
  const ModulusContext& ctx = g.context();
  int k = 0;
  while (k <= ctx.n() && ctx.p_power(k) != order) ++k;
  if (k < 1 || k > ctx.n()) throw InvalidInput("order must be p^k with 1 <= k <= n");

  std::int64_t q = ctx.modulus();
  std::vector<Submodule> found;
  for (std::int64_t x = 0; x < q; ++x) {
    for (std::int64_t y = 0; y < q; ++y) {
      ResidueVector v(ctx, {x, y});
      // Exact order p^k means min valuation of the entries is n - k.
      if (std::min(ctx.valuation(x), ctx.valuation(y)) != ctx.n() - k) continue;
      Submodule c = Submodule::span(ctx, 2, {v});
      if (std::find(found.begin(), found.end(), c) != found.end()) continue;
      bool stable = std::all_of(g.generators().begin(), g.generators().end(),
                                [&](const Mat2& s) { return c.contains(s * v); });
      if (stable) found.push_back(c);
    }
  }
  std::sort(found.begin(), found.end(), [](const Submodule& a, const Submodule& b) {
    return a.generators() < b.generators();
  });
  return found;
}

bool isogeny_condition_p3(const MatGroup& g2) {
  const ModulusContext& ctx = g2.context();
  if (ctx.n() != 2) throw WrongLevel("isogeny_condition_p3 expects a level-2 group");
  std::vector<Submodule> big = stable_cyclic_submodules(g2, ctx.p_power(2));
  std::vector<Submodule> small = stable_cyclic_submodules(g2, ctx.p());
  for (const Submodule& c1 : big) {
    for (const Submodule& c2 : small) {
      if (intersect(c1, c2).is_zero()) return true;
    }
  }
  return false;
}

ConditionReport evaluate_main_theorem_conditions(const MatGroup& g) {
  const ModulusContext& ctx = g.context();
  if (ctx.n() < 2) throw WrongLevel("the conditions need a group of level at least 2");
  MatGroup g1 = reduce_mod(g, 1);
  MatGroup g2 = reduce_mod(g, 2);
  ConditionReport r;
  r.has_fixed_point_of_exact_order_p = !fixed_points(g1).is_zero();
  r.det_image_order_mod_p = static_cast<std::int64_t>(det_image(g1).size());
  r.det_kernel_trivial_mod_p = det_kernel_trivial(g1);
  r.stable_cyclic_order_p = stable_cyclic_submodules(g2, ctx.p());
  r.stable_cyclic_order_p2 = stable_cyclic_submodules(g2, ctx.p_power(2));
  r.isogeny_condition_p3 = isogeny_condition_p3(g2);
  r.zeta_condition_holds = r.det_image_order_mod_p >= 3;
  return r;
}

}  // namespace cohomlab
