#include "cohomlab/cohom.hpp"

#include <algorithm>
#include <deque>

namespace cohomlab {

GModule GModule::natural(const MatGroup& g) { return GModule(Kind::natural, -1, g.context()); }

GModule GModule::line(const MatGroup& g, int which) {
  if (which != 0 && which != 1) throw InvalidInput("line index must be 0 or 1");
  for (const Mat2& e : g.elements()) {
    bool stable = which == 0 ? e.c() == 0 : e.b() == 0;
    if (!stable) throw InvalidInput("coordinate line " + std::to_string(which + 1) + " is not stable under " + e.to_string());
  }
  return GModule(Kind::line, which, g.context());
}

GModule GModule::reduced(const MatGroup& g, int level) {
  if (level < 1 || level > g.context().n()) throw InvalidInput("reduction level out of range");
  return GModule(Kind::reduced, -1, g.context().with_exponent(level));
}

ResidueMatrix GModule::action(const Mat2& g) const {
  switch (kind_) {
    case Kind::natural:
      return g.as_matrix();
    case Kind::line:
      return ResidueMatrix(ctx_, 1, 1, {g.entry(line_, line_)});
    case Kind::reduced:
      return g.reduced(ctx_.n()).as_matrix();
  }
  return g.as_matrix();
}

ResidueMatrix GModule::action_minus_identity(const Mat2& g) const {
  ResidueMatrix a = action(g);
  for (std::size_t i = 0; i < a.rows(); ++i) a.set(i, i, a.at(i, i) - 1);
  return a;
}

ResidueVector GModule::apply(const Mat2& g, const ResidueVector& v) const { return action(g) * v; }

namespace {

void require_within_cap(const MatGroup& g) {
  if (g.order() > default_closure_cap()) {
    throw CapExceeded("group of order " + std::to_string(g.order()) + " exceeds the cap " +
                      std::to_string(default_closure_cap()));
  }
}

// Works in generator coordinates: a cocycle is determined by its values on
// the generators, u in M^k. For every element e there is a linear map A_e
// (rank x rank*k) with Z_e = A_e u, built along a BFS tree; every non-tree
// edge e -> e*s gives the constraint A_e u + e A_s u = A_{es} u.
class Engine {
 public:
  Engine(const MatGroup& g, const GModule& m) : g_(g), m_(m), ctx_(m.context()), r_(m.rank()) {
    require_within_cap(g);
    for (const Mat2& s : g.generators()) gens_.push_back(*g.index_of(s));
    dim_ = r_ * gens_.size();
    acts_.reserve(g.order());
    for (const Mat2& e : g.elements()) acts_.push_back(m.action(e));
    build();
  }

  std::size_t dim() const { return dim_; }

  const Submodule& z1() {
    if (!z1_) z1_ = kernel(constraint_matrix(false));
    return *z1_;
  }

  const Submodule& b1() {
    if (!b1_) {
      std::vector<ResidueVector> rows;
      for (std::size_t j = 0; j < r_; ++j) {
        ResidueVector row(ctx_, dim_);
        for (std::size_t s = 0; s < gens_.size(); ++s) {
          const ResidueMatrix& a = acts_[gens_[s]];
          for (std::size_t i = 0; i < r_; ++i) row.set(s * r_ + i, a.at(i, j) - (i == j ? 1 : 0));
        }
        rows.push_back(row);
      }
      b1_ = Submodule::span(ctx_, dim_, rows);
    }
    return *b1_;
  }

  const Submodule& local() {
    if (!local_) local_ = kernel(constraint_matrix(true));
    return *local_;
  }

  ResidueVector value(std::size_t element, const ResidueVector& u) const { return a_[element] * u; }

  ResidueVector expand(const ResidueVector& u) const {
    ResidueVector table(ctx_, r_ * g_.order());
    for (std::size_t e = 0; e < g_.order(); ++e) {
      ResidueVector v = value(e, u);
      for (std::size_t i = 0; i < r_; ++i) table.set(e * r_ + i, v[i]);
    }
    return table;
  }

  Submodule expand(const Submodule& s) const {
    std::vector<ResidueVector> rows;
    for (const ResidueVector& u : s.generators()) rows.push_back(expand(u));
    return Submodule::span(ctx_, r_ * g_.order(), rows);
  }

  Cocycle cocycle(const ResidueVector& u) const { return Cocycle::from_table(g_, m_, expand(u)); }

 private:
  void build() {
    std::size_t n = g_.order();
    a_.assign(n, ResidueMatrix(ctx_, r_, dim_));
    std::vector<char> seen(n, 0);
    std::size_t id = g_.identity_index();
    seen[id] = 1;
    std::deque<std::size_t> queue{id};
    while (!queue.empty()) {
      std::size_t e = queue.front();
      queue.pop_front();
      for (std::size_t s = 0; s < gens_.size(); ++s) {
        std::size_t es = g_.multiply(e, gens_[s]);
        // Z_{es} = Z_e + e Z_s, and Z_s is the s-th block of u.
        ResidueMatrix next = a_[e];
        const ResidueMatrix& act = acts_[e];
        for (std::size_t i = 0; i < r_; ++i) {
          for (std::size_t j = 0; j < r_; ++j) {
            std::size_t col = s * r_ + j;
            next.set(i, col, next.at(i, col) + act.at(i, j));
          }
        }
        if (!seen[es]) {
          seen[es] = 1;
          a_[es] = std::move(next);
          queue.push_back(es);
        } else {
          ResidueMatrix diff(ctx_, r_, dim_);
          bool zero = true;
          for (std::size_t i = 0; i < r_; ++i) {
            for (std::size_t c = 0; c < dim_; ++c) {
              diff.set(i, c, next.at(i, c) - a_[es].at(i, c));
              zero = zero && diff.at(i, c) == 0;
            }
          }
          if (!zero) {
            for (std::size_t i = 0; i < r_; ++i) constraints_.push_back(diff.row(i));
          }
        }
      }
    }
  }

  ResidueMatrix constraint_matrix(bool with_local) const {
    std::vector<ResidueVector> rows = constraints_;
    if (with_local) {
      // Z_e in Im(e - I): with U (e - I) V = diag(p^{v_i}), the condition
      // is p^{n - v_i} (U Z_e)_i = 0 for every i.
      for (std::size_t e = 0; e < g_.order(); ++e) {
        if (e == g_.identity_index()) continue;
        SmithForm sf = smith_form(m_.action_minus_identity(g_.element(e)));
        ResidueMatrix ua = sf.u * a_[e];
        for (std::size_t i = 0; i < r_; ++i) {
          int v = sf.valuations[i];
          if (v == 0) continue;
          ResidueVector row = ua.row(i).scaled(ctx_.p_power(ctx_.n() - v) % ctx_.modulus());
          if (!row.is_zero()) rows.push_back(row);
        }
      }
    }
    return ResidueMatrix::from_rows(ctx_, dim_, rows);
  }

  MatGroup g_;
  GModule m_;
  ModulusContext ctx_;
  std::size_t r_;
  std::vector<std::size_t> gens_;
  std::size_t dim_ = 0;
  std::vector<ResidueMatrix> acts_;
  std::vector<ResidueMatrix> a_;
  std::vector<ResidueVector> constraints_;
  std::optional<Submodule> z1_, b1_, local_;
};

// Deterministic representative: subtract the coboundary that zeroes the
// first nonzero value (possible because the value lies in Im(g - I)).
Cocycle reduce_witness(const Cocycle& z) {
  for (std::size_t e = 0; e < z.group.order(); ++e) {
    if (z.values[e].is_zero()) continue;
    auto v = solve_linear(z.module.action_minus_identity(z.group.element(e)), z.values[e]);
    if (!v) return z;
    return z - Cocycle::coboundary(z.group, z.module, *v);
  }
  return z;
}

// Value-table coordinates of B^1(C) for the restriction check.
Submodule coboundaries_on(const MatGroup& c, const GModule& m) {
  std::size_t r = m.rank();
  std::vector<ResidueVector> rows;
  for (std::size_t j = 0; j < r; ++j) {
    ResidueVector row(m.context(), r * c.order());
    for (std::size_t e = 0; e < c.order(); ++e) {
      ResidueMatrix a = m.action_minus_identity(c.element(e));
      for (std::size_t i = 0; i < r; ++i) row.set(e * r + i, a.at(i, j));
    }
    rows.push_back(row);
  }
  return Submodule::span(m.context(), r * c.order(), rows);
}

}  // namespace

Cocycle Cocycle::zero(const MatGroup& g, const GModule& m) {
  return Cocycle{g, m, std::vector<ResidueVector>(g.order(), ResidueVector(m.context(), m.rank()))};
}

Cocycle Cocycle::coboundary(const MatGroup& g, const GModule& m, const ResidueVector& v) {
  if (v.size() != m.rank()) throw DimensionMismatch("coboundary vector has the wrong rank");
  Cocycle z = zero(g, m);
  for (std::size_t e = 0; e < g.order(); ++e) z.values[e] = m.apply(g.element(e), v) - v;
  return z;
}

Cocycle Cocycle::from_table(const MatGroup& g, const GModule& m, const ResidueVector& table) {
  std::size_t r = m.rank();
  if (table.size() != r * g.order()) throw DimensionMismatch("value table length does not match rank * |G|");
  Cocycle z = zero(g, m);
  for (std::size_t e = 0; e < g.order(); ++e) {
    for (std::size_t i = 0; i < r; ++i) z.values[e].set(i, table[e * r + i]);
  }
  return z;
}

const ResidueVector& Cocycle::at(const Mat2& g) const {
  auto i = group.index_of(g);
  if (!i) throw NotASubgroup("element " + g.to_string() + " is not in the group");
  return values[*i];
}

ResidueVector Cocycle::table() const {
  std::size_t r = module.rank();
  ResidueVector t(module.context(), r * values.size());
  for (std::size_t e = 0; e < values.size(); ++e) {
    for (std::size_t i = 0; i < r; ++i) t.set(e * r + i, values[e][i]);
  }
  return t;
}

bool Cocycle::satisfies_relation() const {
  std::size_t n = group.order();
  for (std::size_t g = 0; g < n; ++g) {
    ResidueMatrix act = module.action(group.element(g));
    for (std::size_t h = 0; h < n; ++h) {
      if (values[group.multiply(g, h)] != values[g] + act * values[h]) return false;
    }
  }
  return true;
}

bool Cocycle::is_zero() const {
  return std::all_of(values.begin(), values.end(), [](const ResidueVector& v) { return v.is_zero(); });
}

Cocycle Cocycle::operator+(const Cocycle& o) const {
  Cocycle z = *this;
  for (std::size_t e = 0; e < values.size(); ++e) z.values[e] = values[e] + o.values[e];
  return z;
}

Cocycle Cocycle::operator-(const Cocycle& o) const {
  Cocycle z = *this;
  for (std::size_t e = 0; e < values.size(); ++e) z.values[e] = values[e] - o.values[e];
  return z;
}

Cocycle Cocycle::scaled(Residue s) const {
  Cocycle z = *this;
  for (auto& v : z.values) v = v.scaled(s);
  return z;
}

Submodule cocycle_space(const MatGroup& g) { return cocycle_space(g, GModule::natural(g)); }
Submodule cocycle_space(const MatGroup& g, const GModule& m) {
  Engine eng(g, m);
  return eng.expand(eng.z1());
}

Submodule coboundary_space(const MatGroup& g) { return coboundary_space(g, GModule::natural(g)); }
Submodule coboundary_space(const MatGroup& g, const GModule& m) {
  Engine eng(g, m);
  return eng.expand(eng.b1());
}

Submodule locally_trivial_subspace(const MatGroup& g) { return locally_trivial_subspace(g, GModule::natural(g)); }
Submodule locally_trivial_subspace(const MatGroup& g, const GModule& m) {
  Engine eng(g, m);
  return eng.expand(eng.local());
}

std::vector<std::int64_t> h1(const MatGroup& g) { return h1(g, GModule::natural(g)); }
std::vector<std::int64_t> h1(const MatGroup& g, const GModule& m) {
  Engine eng(g, m);
  return quotient_invariants(eng.z1(), eng.b1());
}

CohomologyReport h1_loc(const MatGroup& g) { return h1_loc(g, GModule::natural(g)); }
CohomologyReport h1_loc(const MatGroup& g, const GModule& m) {
  Engine eng(g, m);
  Submodule zero = Submodule::zero(m.context(), eng.dim());
  CohomologyReport report;
  report.z1 = quotient_invariants(eng.z1(), zero);
  report.b1 = quotient_invariants(eng.b1(), zero);
  report.h1 = quotient_invariants(eng.z1(), eng.b1());
  QuotientStructure q = quotient_structure(eng.local(), eng.b1());
  report.h1loc = q.invariants;
  for (const ResidueVector& u : q.generators) report.witnesses.push_back(reduce_witness(eng.cocycle(u)));
  return report;
}

std::vector<std::int64_t> h1_loc_invariants(const MatGroup& g, const GModule& m) {
  Engine eng(g, m);
  return quotient_invariants(eng.local(), eng.b1());
}

std::vector<std::int64_t> h1_loc_via_restrictions(const MatGroup& g, Execution exec) {
  return h1_loc_via_restrictions(g, GModule::natural(g), exec);
}

std::vector<std::int64_t> h1_loc_via_restrictions(const MatGroup& g, const GModule& m, Execution exec) {
  Engine eng(g, m);
  const Submodule& z1 = eng.z1();
  const std::vector<ResidueVector>& zgens = z1.generators();
  if (zgens.empty()) return {};
  std::size_t r = m.rank();
  std::vector<MatGroup> cyclic = cyclic_subgroups(g);
  std::vector<std::optional<Submodule>> kernels(cyclic.size());

  // K_C = { t : sum t_i res_C(z_i) is a coboundary on C }.
  auto restriction_kernel = [&](std::size_t k) {
    const MatGroup& c = cyclic[k];
    ResidueMatrix images(m.context(), zgens.size(), r * c.order());
    for (std::size_t e = 0; e < c.order(); ++e) {
      std::size_t idx = *g.index_of(c.element(e));
      for (std::size_t i = 0; i < zgens.size(); ++i) {
        ResidueVector v = eng.value(idx, zgens[i]);
        for (std::size_t t = 0; t < r; ++t) images.set(i, e * r + t, v[t]);
      }
    }
    kernels[k] = preimage(images, coboundaries_on(c, m));
  };

  if (exec == Execution::parallel) {
    long count = static_cast<long>(cyclic.size());
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < count; ++k) restriction_kernel(static_cast<std::size_t>(k));
  } else {
    for (std::size_t k = 0; k < cyclic.size(); ++k) restriction_kernel(k);
  }

  Submodule common = Submodule::whole(m.context(), zgens.size());
  for (const auto& k : kernels) common = intersect(common, *k);
  Submodule local = map_rows(common, ResidueMatrix::from_rows(m.context(), eng.dim(), zgens));
  return quotient_invariants(local, eng.b1());
}

std::optional<ResidueVector> is_coboundary(const Cocycle& z) {
  std::size_t r = z.module.rank();
  std::size_t n = z.group.order();
  ResidueMatrix a(z.module.context(), r * n, r);
  for (std::size_t e = 0; e < n; ++e) {
    ResidueMatrix d = z.module.action_minus_identity(z.group.element(e));
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) a.set(e * r + i, j, d.at(i, j));
    }
  }
  return solve_linear(a, z.table());
}

bool is_locally_trivial(const Cocycle& z) {
  for (std::size_t e = 0; e < z.group.order(); ++e) {
    if (!image_contains(z.module.action_minus_identity(z.group.element(e)), z.values[e])) return false;
  }
  return true;
}

Cocycle restriction(const Cocycle& z, const MatGroup& h) {
  Cocycle out = Cocycle::zero(h, z.module);
  for (std::size_t e = 0; e < h.order(); ++e) {
    auto i = z.group.index_of(h.element(e));
    if (!i) throw NotASubgroup(h.element(e).to_string() + " is not in the ambient group");
    out.values[e] = z.values[*i];
  }
  return out;
}

ActionImage action_image(const MatGroup& g, const GModule& m) {
  const ModulusContext& ctx = g.context();
  auto image_of = [&](const Mat2& e) {
    switch (m.kind()) {
      case GModule::Kind::natural:
        return e;
      case GModule::Kind::line:
        return m.which_line() == 0 ? Mat2::diagonal(ctx, e.a(), 1) : Mat2::diagonal(ctx, 1, e.d());
      case GModule::Kind::reduced:
        return e.reduced(m.context().n());
    }
    return e;
  };
  std::vector<Mat2> images;
  std::vector<Mat2> kernel_elements;
  for (const Mat2& e : g.elements()) {
    Mat2 im = image_of(e);
    images.push_back(im);
    if (im.is_identity()) kernel_elements.push_back(e);
  }
  std::vector<Mat2> distinct = images;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  MatGroup image = MatGroup::from_elements(distinct.front().context(), distinct);
  std::vector<std::size_t> projection;
  for (const Mat2& im : images) projection.push_back(*image.index_of(im));
  GModule module = m.kind() == GModule::Kind::line ? GModule::line(image, m.which_line()) : GModule::natural(image);
  MatGroup kernel = MatGroup::from_elements(ctx, kernel_elements);
  return ActionImage{image, module, projection, kernel};
}

Cocycle inflation(const Cocycle& y, const MatGroup& g, const GModule& m, const MatGroup& delta) {
  ActionImage ai = action_image(g, m);
  if (!(delta == ai.kernel)) {
    throw StabilizerMismatch("the given subgroup (order " + std::to_string(delta.order()) +
                             ") is not the pointwise stabilizer (order " + std::to_string(ai.kernel.order()) + ")");
  }
  if (!(y.group == ai.image) || !(y.module == ai.module)) {
    throw InvalidInput("the inflated cocycle must live on the action image of the group");
  }
  Cocycle z = Cocycle::zero(g, m);
  for (std::size_t e = 0; e < g.order(); ++e) z.values[e] = y.values[ai.projection[e]];
  return z;
}

NormalizedCocycle normalize_locally_trivial_cocycle(const Cocycle& z, const Mat2& rho, const SpecialSubgroups& parts) {
  const MatGroup& g = z.group;
  const ModulusContext& ctx = g.context();
  if (z.module.kind() != GModule::Kind::natural) throw HypothesisViolated("the module must be the natural module");
  if (!rho.is_diagonal() || rho.a() != 1) throw HypothesisViolated("rho must be diagonal with first eigenvalue 1");
  if (rho.order() < 3) throw HypothesisViolated("rho has order " + std::to_string(rho.order()) + " < 3");
  if (ctx.reduce(rho.d() - 1) % ctx.p() == 0) throw HypothesisViolated("the eigenvalues of rho must differ mod p");
  if (!g.contains(rho)) throw HypothesisViolated("rho is not in the group");

  std::vector<Mat2> dul;
  for (const MatGroup* part : {&parts.diagonal, &parts.upper, &parts.lower}) {
    if (!part->is_subgroup_of(g)) throw HypothesisViolated("a special subgroup is not contained in the group");
    dul.insert(dul.end(), part->elements().begin(), part->elements().end());
  }
  if (subgroup_generated(g, dul).order() != g.order()) {
    throw HypothesisViolated("the group is not generated by D, sU and sL");
  }
  if (!is_locally_trivial(z)) throw HypothesisViolated("the cocycle is not locally trivial");

  auto q = is_coboundary(restriction(z, parts.diagonal));
  if (!q) throw HypothesisViolated("the restriction to D is not a coboundary");
  Cocycle shifted = z - Cocycle::coboundary(g, z.module, *q);

  std::vector<Mat2> with_lower{rho};
  std::vector<Mat2> with_upper{rho};
  with_lower.insert(with_lower.end(), parts.lower.elements().begin(), parts.lower.elements().end());
  with_upper.insert(with_upper.end(), parts.upper.elements().begin(), parts.upper.elements().end());
  auto pvec = is_coboundary(restriction(shifted, subgroup_generated(g, with_lower)));
  if (!pvec) throw HypothesisViolated("the restriction to <rho, sL> is not a coboundary");
  auto rvec = is_coboundary(restriction(shifted, subgroup_generated(g, with_upper)));
  if (!rvec) throw HypothesisViolated("the restriction to <rho, sU> is not a coboundary");

  // sL = {[[1,0],[x,1]] : p^j | x}, generated by the element with x = p^j.
  int j = ctx.n();
  for (const Mat2& e : parts.lower.elements()) j = std::min(j, ctx.valuation(e.c()));
  Mat2 tau = Mat2(ctx, 1, 0, ctx.p_power(j), 1);
  // P lies in ker(rho - I) = {(beta, 0)} because the eigenvalues of rho differ mod p.
  Residue beta = (*pvec)[0];
  return NormalizedCocycle{shifted, beta, j, tau};
}

}  // namespace cohomlab
