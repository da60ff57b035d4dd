#include "cohomlab/search.hpp"

#include <algorithm>
#include <random>

namespace cohomlab {

std::int64_t Deadline::elapsed_ms() const {
  auto d = std::chrono::steady_clock::now() - start_;
  return std::chrono::duration_cast<std::chrono::milliseconds>(d).count();
}

void Deadline::check(const char* stage) const {
  if (budget_ms_ > 0 && elapsed_ms() > budget_ms_) {
    throw BudgetExceeded(std::string(stage) + " ran past the " + std::to_string(budget_ms_) + " ms budget");
  }
}

bool are_conjugate(const MatGroup& a, const MatGroup& b) {
  if (a.order() != b.order() || !(a.context() == b.context())) return false;
  if (a == b) return true;
  const ModulusContext& ctx = a.context();
  const std::int64_t q = ctx.modulus();
  for (std::int64_t w = 0; w < q; ++w)
    for (std::int64_t x = 0; x < q; ++x)
      for (std::int64_t y = 0; y < q; ++y)
        for (std::int64_t z = 0; z < q; ++z) {
          Mat2 t(ctx, w, x, y, z);
          if (!t.is_invertible()) continue;
          Mat2 ti = t.inverse();
          bool ok = std::all_of(a.generators().begin(), a.generators().end(),
                                [&](const Mat2& s) { return b.contains(t * s * ti); });
          if (ok) return true;
        }
  return false;
}

std::vector<std::uint64_t> ConjugacyIndex::signature(const MatGroup& g) const {
  std::vector<std::uint64_t> sig;
  sig.reserve(g.order() + 1);
  for (const Mat2& e : g.elements()) {
    auto trace = static_cast<std::uint64_t>(e.context().add(e.a(), e.d()));
    sig.push_back((static_cast<std::uint64_t>(e.order()) << 40) | (static_cast<std::uint64_t>(e.det()) << 20) | trace);
  }
  std::sort(sig.begin(), sig.end());
  sig.push_back(g.order());
  return sig;
}

bool ConjugacyIndex::insert(const MatGroup& g) {
  std::vector<std::uint64_t> sig = signature(g);
  for (const Entry& e : entries_) {
    if (e.signature == sig && are_conjugate(e.group, g)) return false;
  }
  entries_.push_back(Entry{std::move(sig), g});
  return true;
}

SubgroupSearchResult search_subgroups(const ModulusContext& ctx, int max_generators, std::size_t cap,
                                      const Deadline& deadline) {
  if (ctx.modulus() > 9) throw BudgetExceeded("exhaustive subgroup search needs p^n <= 9");
  MatGroup gl = general_linear_group(ctx);
  ConjugacyIndex index;
  SubgroupSearchResult res;
  MatGroup trivial = MatGroup::from_elements(ctx, {Mat2::identity(ctx)});
  index.insert(trivial);
  res.groups.push_back(trivial);

  std::vector<MatGroup> layer{trivial};
  for (int k = 1; k <= max_generators; ++k) {
    std::vector<MatGroup> next;
    for (const MatGroup& h : layer) {
      deadline.check("subgroup search");
      std::vector<Mat2> normalizer;
      for (const Mat2& t : gl.elements()) {
        Mat2 ti = t.inverse();
        bool ok = std::all_of(h.generators().begin(), h.generators().end(),
                              [&](const Mat2& s) { return h.contains(t * s * ti); });
        if (ok) normalizer.push_back(t);
      }
      MatGroup n = MatGroup::from_elements(ctx, normalizer);
      std::vector<std::size_t> left, conj, conj_inv;
      for (const Mat2& s : h.generators()) left.push_back(*gl.index_of(s));
      for (const Mat2& s : n.generators()) {
        conj.push_back(*gl.index_of(s));
        conj_inv.push_back(*gl.index_of(s.inverse()));
      }

      // ⟨H, g⟩ only depends on g up to H g and conjugation by N(H), so one
      // g per orbit of that action is enough.
      std::vector<char> covered(gl.order(), 0);
      for (std::size_t gi = 0; gi < gl.order(); ++gi) {
        if (covered[gi]) continue;
        std::vector<std::size_t> orbit{gi};
        covered[gi] = 1;
        for (std::size_t head = 0; head < orbit.size(); ++head) {
          std::size_t x = orbit[head];
          auto visit = [&](std::size_t y) {
            if (!covered[y]) {
              covered[y] = 1;
              orbit.push_back(y);
            }
          };
          for (std::size_t s : left) visit(gl.multiply(s, x));
          for (std::size_t c = 0; c < conj.size(); ++c) visit(gl.multiply(gl.multiply(conj[c], x), conj_inv[c]));
        }
        if (h.contains(gl.element(gi))) continue;
        deadline.check("subgroup search");
        std::vector<Mat2> gens = h.generators();
        gens.push_back(gl.element(gi));
        ++res.closures;
        std::optional<MatGroup> k_group;
        try {
          k_group = close_group(gens, ctx, cap);
        } catch (const CapExceeded&) {
          ++res.over_cap;
          continue;
        }
        if (index.insert(*k_group)) {
          next.push_back(*k_group);
          res.groups.push_back(*k_group);
        }
      }
    }
    layer = std::move(next);
  }
  return res;
}

namespace {

std::int64_t random_unit(std::mt19937_64& rng, const ModulusContext& ctx) {
  for (;;) {
    auto x = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(ctx.modulus()));
    if (ctx.is_unit(x)) return x;
  }
}

std::int64_t random_residue(std::mt19937_64& rng, const ModulusContext& ctx) {
  return static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(ctx.modulus()));
}

Mat2 random_element(std::mt19937_64& rng, const ModulusContext& ctx) {
  switch (rng() % 6) {
    case 0:
      return Mat2::diagonal(ctx, 1, random_unit(rng, ctx));
    case 1:
      return Mat2::diagonal(ctx, random_unit(rng, ctx), random_unit(rng, ctx));
    case 2:
      return Mat2(ctx, 1, random_residue(rng, ctx), 0, 1);
    case 3:
      return Mat2(ctx, 1, 0, random_residue(rng, ctx), 1);
    case 4: {
      std::int64_t p = ctx.p();
      return Mat2(ctx, 1 + p * random_residue(rng, ctx), p * random_residue(rng, ctx), p * random_residue(rng, ctx),
                  1 + p * random_residue(rng, ctx));
    }
    default:
      for (;;) {
        Mat2 m(ctx, random_residue(rng, ctx), random_residue(rng, ctx), random_residue(rng, ctx),
               random_residue(rng, ctx));
        if (m.is_invertible()) return m;
      }
  }
}

}  // namespace

SubgroupSearchResult sample_subgroups(const ModulusContext& ctx, std::size_t count, int max_generators,
                                      std::uint64_t seed, std::size_t cap, const Deadline& deadline) {
  std::mt19937_64 rng(seed);
  ConjugacyIndex index;
  SubgroupSearchResult res;
  for (std::size_t attempt = 0; attempt < 20 * count && res.groups.size() < count; ++attempt) {
    deadline.check("subgroup sampling");
    std::size_t k = 1 + rng() % static_cast<std::uint64_t>(max_generators);
    std::vector<Mat2> gens;
    for (std::size_t i = 0; i < k; ++i) gens.push_back(random_element(rng, ctx));
    ++res.closures;
    try {
      MatGroup g = close_group(gens, ctx, cap);
      if (index.insert(g)) res.groups.push_back(g);
    } catch (const CapExceeded&) {
      ++res.over_cap;
    }
  }
  return res;
}

}  // namespace cohomlab
