#pragma once

// Group-level predicates standing in for the arithmetic conditions:
// fixed vectors (rational torsion), determinants (action on p-th roots of
// unity) and stable cyclic submodules (kernels of rational isogenies).

#include <vector>

#include "cohomlab/matgrp.hpp"
#include "cohomlab/zmod.hpp"

namespace cohomlab {

struct ConditionReport {
  bool has_fixed_point_of_exact_order_p = false;
  std::int64_t det_image_order_mod_p = 0;
  bool det_kernel_trivial_mod_p = false;
  std::vector<Submodule> stable_cyclic_order_p;
  std::vector<Submodule> stable_cyclic_order_p2;
  bool isogeny_condition_p3 = false;
  bool zeta_condition_holds = false;  // det image order mod p >= 3
};

/// { v : g v = v for all g in G }.
Submodule fixed_points(const MatGroup& g);

/// Sorted distinct determinants.
std::vector<Residue> det_image(const MatGroup& g);

/// True iff I is the only element with determinant 1. Throws WrongLevel
/// unless n = 1.
bool det_kernel_trivial(const MatGroup& g1);

/// Cyclic submodules <v> of exact order `order` (a power of p) with
/// g v in <v> for every g, sorted by generator. Throws InvalidInput if the
/// order is not p^k with 1 <= k <= n.
std::vector<Submodule> stable_cyclic_submodules(const MatGroup& g, std::int64_t order);

/// A stable cyclic C1 of order p^2 and a stable C2 of order p meeting only
/// in 0. Throws WrongLevel unless n = 2.
bool isogeny_condition_p3(const MatGroup& g2);

/// Evaluates the predicates on the reductions to levels 1 and 2. Throws
/// WrongLevel when n < 2.
ConditionReport evaluate_main_theorem_conditions(const MatGroup& g);

}  // namespace cohomlab
