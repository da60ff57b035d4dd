#include "cohomlab/brute_force.hpp"

#include <algorithm>
#include <unordered_set>

namespace cohomlab {

namespace {

using Values = std::vector<ResidueVector>;

struct Setup {
  MatGroup g;
  GModule m;
  std::vector<std::size_t> gens;
  std::vector<ResidueMatrix> acts;
  std::size_t width = 0;  // rank * number of generators
  std::int64_t q = 0;

  std::vector<std::int64_t> digits(std::int64_t code) const {
    std::vector<std::int64_t> d(width);
    for (std::size_t i = 0; i < width; ++i) {
      d[i] = code % q;
      code /= q;
    }
    return d;
  }

  std::int64_t encode(const std::vector<std::int64_t>& d) const {
    std::int64_t code = 0;
    for (std::size_t i = width; i-- > 0;) code = code * q + d[i];
    return code;
  }

  // Extends generator values along right multiplication; nullopt on conflict.
  std::optional<Values> extend(const std::vector<std::int64_t>& d) const {
    std::size_t r = m.rank();
    std::vector<ResidueVector> on_gens;
    for (std::size_t s = 0; s < gens.size(); ++s) {
      std::vector<std::int64_t> v(d.begin() + static_cast<long>(s * r), d.begin() + static_cast<long>((s + 1) * r));
      on_gens.emplace_back(m.context(), v);
    }
    std::vector<std::optional<ResidueVector>> z(g.order());
    z[g.identity_index()] = ResidueVector(m.context(), r);
    std::vector<std::size_t> frontier{g.identity_index()};
    while (!frontier.empty()) {
      std::vector<std::size_t> next;
      for (std::size_t e : frontier) {
        for (std::size_t s = 0; s < gens.size(); ++s) {
          std::size_t es = g.multiply(e, gens[s]);
          ResidueVector val = *z[e] + acts[e] * on_gens[s];
          if (!z[es]) {
            z[es] = val;
            next.push_back(es);
          } else if (*z[es] != val) {
            return std::nullopt;
          }
        }
      }
      frontier = std::move(next);
    }
    Values out;
    for (auto& v : z) out.push_back(*v);
    return out;
  }

  bool relation_holds(const Values& z) const {
    for (std::size_t a = 0; a < g.order(); ++a) {
      for (std::size_t b = 0; b < g.order(); ++b) {
        if (z[g.multiply(a, b)] != z[a] + acts[a] * z[b]) return false;
      }
    }
    return true;
  }
};

// Invariant factors of S/T from the orders of the p^i-torsion subgroups
// |(S/T)[p^i]| = #{x in S : p^i x in T} / |T|.
std::vector<std::int64_t> invariants_by_counting(const Setup& st, const std::vector<std::int64_t>& s,
                                                 const std::unordered_set<std::int64_t>& t) {
  const ModulusContext& ctx = st.m.context();
  int n = ctx.n();
  std::vector<int> log_torsion(static_cast<std::size_t>(n) + 1, 0);
  auto log_p = [&](std::int64_t x) {
    int k = 0;
    while (x > 1) {
      x /= ctx.p();
      ++k;
    }
    return k;
  };
  int log_t = log_p(static_cast<std::int64_t>(t.size()));
  for (int i = 1; i <= n; ++i) {
    std::int64_t scale = ctx.p_power(i) % ctx.modulus();
    std::int64_t count = 0;
    for (std::int64_t code : s) {
      std::vector<std::int64_t> d = st.digits(code);
      for (auto& x : d) x = ctx.mul(x, scale);
      if (t.count(st.encode(d))) ++count;
    }
    log_torsion[static_cast<std::size_t>(i)] = log_p(count) - log_t;
  }
  // Number of cyclic factors of order >= p^i is log|Q[p^i]| - log|Q[p^{i-1}]|.
  std::vector<std::int64_t> factors;
  for (int i = n; i >= 1; --i) {
    int at_least_i = log_torsion[static_cast<std::size_t>(i)] - log_torsion[static_cast<std::size_t>(i - 1)];
    int at_least_next = i < n ? log_torsion[static_cast<std::size_t>(i + 1)] - log_torsion[static_cast<std::size_t>(i)] : 0;
    for (int k = 0; k < at_least_i - at_least_next; ++k) factors.push_back(ctx.p_power(i));
  }
  std::sort(factors.begin(), factors.end());
  return factors;
}

}  // namespace

BruteForceResult brute_force_cohomology(const MatGroup& g, Execution exec) {
  return brute_force_cohomology(g, GModule::natural(g), exec);
}

BruteForceResult brute_force_cohomology(const MatGroup& g, const GModule& m, Execution exec) {
  Setup st{g, m, {}, {}, 0, m.context().modulus()};
  for (const Mat2& s : g.generators()) st.gens.push_back(*g.index_of(s));
  for (const Mat2& e : g.elements()) st.acts.push_back(m.action(e));
  st.width = m.rank() * st.gens.size();
  std::int64_t total = 1;
  for (std::size_t i = 0; i < st.width; ++i) {
    total *= st.q;
    if (total > (std::int64_t{1} << 24)) throw CapExceeded("brute force over more than 2^24 assignments");
  }

  // Per element, the set Im(e - I) enumerated over all x in M.
  std::size_t r = m.rank();
  std::vector<std::unordered_set<std::int64_t>> images(g.order());
  std::int64_t module_size = 1;
  for (std::size_t i = 0; i < r; ++i) module_size *= st.q;
  auto encode_vec = [&](const ResidueVector& v) {
    std::int64_t code = 0;
    for (std::size_t i = r; i-- > 0;) code = code * st.q + v[i];
    return code;
  };
  auto vector_of = [&](std::int64_t code) {
    ResidueVector v(m.context(), r);
    for (std::size_t i = 0; i < r; ++i) {
      v.set(i, code % st.q);
      code /= st.q;
    }
    return v;
  };
  for (std::size_t e = 0; e < g.order(); ++e) {
    ResidueMatrix a = m.action_minus_identity(g.element(e));
    for (std::int64_t x = 0; x < module_size; ++x) images[e].insert(encode_vec(a * vector_of(x)));
  }

  std::vector<std::int64_t> cocycles, local;
  auto visit = [&](std::int64_t code, std::vector<std::int64_t>& zs, std::vector<std::int64_t>& ls) {
    auto z = st.extend(st.digits(code));
    if (!z || !st.relation_holds(*z)) return;
    zs.push_back(code);
    for (std::size_t e = 0; e < g.order(); ++e) {
      if (!images[e].count(encode_vec((*z)[e]))) return;
    }
    ls.push_back(code);
  };

  if (exec == Execution::parallel) {
#pragma omp parallel
    {
      std::vector<std::int64_t> zs, ls;
#pragma omp for schedule(static) nowait
      for (std::int64_t code = 0; code < total; ++code) visit(code, zs, ls);
#pragma omp critical
      {
        cocycles.insert(cocycles.end(), zs.begin(), zs.end());
        local.insert(local.end(), ls.begin(), ls.end());
      }
    }
    std::sort(cocycles.begin(), cocycles.end());
    std::sort(local.begin(), local.end());
  } else {
    for (std::int64_t code = 0; code < total; ++code) visit(code, cocycles, local);
  }

  // Coboundaries: generator values (s - I) v for every v in M.
  std::unordered_set<std::int64_t> coboundaries;
  for (std::int64_t x = 0; x < module_size; ++x) {
    ResidueVector v = vector_of(x);
    std::vector<std::int64_t> d;
    for (std::size_t s : st.gens) {
      ResidueVector w = st.acts[s] * v - v;
      for (std::size_t i = 0; i < r; ++i) d.push_back(w[i]);
    }
    coboundaries.insert(st.encode(d));
  }

  BruteForceResult res;
  res.z1_order = static_cast<std::int64_t>(cocycles.size());
  res.b1_order = static_cast<std::int64_t>(coboundaries.size());
  res.local_order = static_cast<std::int64_t>(local.size());
  res.h1 = invariants_by_counting(st, cocycles, coboundaries);
  res.h1loc = invariants_by_counting(st, local, coboundaries);
  return res;
}

}  // namespace cohomlab
