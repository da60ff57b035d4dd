#pragma once

// First cohomology of matrix groups with coefficients in (Z/p^nZ)^2, the
// locally trivial subspace and H^1_loc.
//
// A class is locally trivial when its restriction to every cyclic subgroup
// is a coboundary. On <g> a cocycle is determined by Z_g and is a coboundary
// exactly when Z_g lies in Im(g - I), so L is computed from that per-element
// condition; h1_loc_via_restrictions keeps the literal restriction-map route
// as an independent check.
//
// H^1_loc here quantifies over all cyclic subgroups of the abstract group,
// which is the group-theoretic definition (not decomposition groups).

#include <optional>
#include <vector>

#include "cohomlab/matgrp.hpp"
#include "cohomlab/zmod.hpp"

namespace cohomlab {

enum class Execution { serial, parallel };

/// Coefficient module of a matrix group: the natural module (Z/p^nZ)^2, a
/// stable coordinate line (rank 1, acted on by the diagonal entry), or the
/// natural module reduced to level m (G acts through reduction mod p^m).
class GModule {
 public:
  enum class Kind { natural, line, reduced };

  static GModule natural(const MatGroup& g);
  /// which = 0 for <e1>, 1 for <e2>; throws InvalidInput if not G-stable.
  static GModule line(const MatGroup& g, int which);
  static GModule reduced(const MatGroup& g, int level);

  Kind kind() const { return kind_; }
  int which_line() const { return line_; }
  const ModulusContext& context() const { return ctx_; }
  std::size_t rank() const { return kind_ == Kind::line ? 1 : 2; }

  /// rank x rank matrix of g acting on the module.
  ResidueMatrix action(const Mat2& g) const;
  ResidueMatrix action_minus_identity(const Mat2& g) const;
  ResidueVector apply(const Mat2& g, const ResidueVector& v) const;

  bool operator==(const GModule& o) const {
    return kind_ == o.kind_ && line_ == o.line_ && ctx_ == o.ctx_;
  }

 private:
  GModule(Kind kind, int line, const ModulusContext& ctx) : kind_(kind), line_(line), ctx_(ctx) {}
  Kind kind_;
  int line_;
  ModulusContext ctx_;
};

/// A value table Z: G -> M in the group's element order.
struct Cocycle {
  MatGroup group;
  GModule module;
  std::vector<ResidueVector> values;

  static Cocycle zero(const MatGroup& g, const GModule& m);
  /// g -> g.v - v
  static Cocycle coboundary(const MatGroup& g, const GModule& m, const ResidueVector& v);
  /// From a flattened table of length rank * |G|.
  static Cocycle from_table(const MatGroup& g, const GModule& m, const ResidueVector& table);

  const ResidueVector& at(const Mat2& g) const;
  ResidueVector table() const;
  /// Z_{gh} = Z_g + g Z_h for every pair.
  bool satisfies_relation() const;
  bool is_zero() const;

  Cocycle operator+(const Cocycle& o) const;
  Cocycle operator-(const Cocycle& o) const;
  Cocycle scaled(Residue s) const;
};

struct CohomologyReport {
  std::vector<std::int64_t> z1;
  std::vector<std::int64_t> b1;
  std::vector<std::int64_t> h1;
  std::vector<std::int64_t> h1loc;
  std::vector<Cocycle> witnesses;  // one per factor of h1loc
};

/// Z^1 inside M^{|G|} (value-table coordinates). Throws CapExceeded when
/// |G| exceeds the closure cap.
Submodule cocycle_space(const MatGroup& g);
Submodule cocycle_space(const MatGroup& g, const GModule& m);
Submodule coboundary_space(const MatGroup& g);
Submodule coboundary_space(const MatGroup& g, const GModule& m);
Submodule locally_trivial_subspace(const MatGroup& g);
Submodule locally_trivial_subspace(const MatGroup& g, const GModule& m);

std::vector<std::int64_t> h1(const MatGroup& g);
std::vector<std::int64_t> h1(const MatGroup& g, const GModule& m);

CohomologyReport h1_loc(const MatGroup& g);
CohomologyReport h1_loc(const MatGroup& g, const GModule& m);
/// Only the H^1_loc invariant factors (skips witnesses and Z^1/B^1 reports).
std::vector<std::int64_t> h1_loc_invariants(const MatGroup& g, const GModule& m);

/// Intersection over cyclic subgroups C of the kernels of restriction
/// H^1(G) -> H^1(C). Restriction checks run concurrently under parallel.
std::vector<std::int64_t> h1_loc_via_restrictions(const MatGroup& g, Execution exec = Execution::parallel);
std::vector<std::int64_t> h1_loc_via_restrictions(const MatGroup& g, const GModule& m,
                                                  Execution exec = Execution::parallel);

/// Some v with Z_g = g.v - v for all g, or nullopt.
std::optional<ResidueVector> is_coboundary(const Cocycle& z);
bool is_locally_trivial(const Cocycle& z);

/// Throws NotASubgroup unless every element of h lies in z.group.
Cocycle restriction(const Cocycle& z, const MatGroup& h);

/// The group G acts on M through G -> Aut(M); this is that image as a
/// faithful matrix group together with the projection and its kernel (the
/// pointwise stabilizer of M).
struct ActionImage {
  MatGroup image;
  GModule module;
  std::vector<std::size_t> projection;  // element index in G -> index in image
  MatGroup kernel;
};
ActionImage action_image(const MatGroup& g, const GModule& m);

/// Z_gamma = Y_{gamma mod Delta}. Throws StabilizerMismatch unless delta is
/// the full pointwise stabilizer of m, InvalidInput if y does not live on
/// the action image.
Cocycle inflation(const Cocycle& y, const MatGroup& g, const GModule& m, const MatGroup& delta);

struct NormalizedCocycle {
  Cocycle cocycle;
  Residue beta;       // cocycle at tau_lower is (0, p^j * beta)
  int j;              // tau_lower = [[1, 0], [p^j, 1]]; j = n when sL is trivial
  Mat2 tau_lower;
};

/// Shifts a locally trivial cocycle by coboundaries so that it vanishes on
/// <D, sU> and takes the value (0, p^j beta) on the generator of sL.
/// Throws HypothesisViolated naming the first failed hypothesis.
NormalizedCocycle normalize_locally_trivial_cocycle(const Cocycle& z, const Mat2& rho, const SpecialSubgroups& parts);

}  // namespace cohomlab
