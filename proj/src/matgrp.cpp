#include "cohomlab/matgrp.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>
#include <unordered_set>

namespace cohomlab {

// Mat2

Mat2::Mat2(const ModulusContext& ctx, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d)
    : ctx_(ctx), e_{ctx.reduce(a), ctx.reduce(b), ctx.reduce(c), ctx.reduce(d)} {}

Mat2 Mat2::inverse() const {
  const Residue inv = unit_inverse(det(), ctx_);
  return Mat2(ctx_, ctx_.mul(e_[3], inv), ctx_.mul(ctx_.neg(e_[1]), inv),
              ctx_.mul(ctx_.neg(e_[2]), inv), ctx_.mul(e_[0], inv));
}

Mat2 Mat2::pow(std::int64_t e) const {
  Mat2 base = e < 0 ? inverse() : *this;
  std::uint64_t k = e < 0 ? static_cast<std::uint64_t>(-e) : static_cast<std::uint64_t>(e);
  Mat2 result = identity(ctx_);
  while (k) {
    if (k & 1) result = result * base;
    base = base * base;
    k >>= 1;
  }
  return result;
}

std::int64_t Mat2::order() const {
  if (!is_invertible()) throw NotAUnit("order of a singular matrix");
  std::int64_t k = 1;
  Mat2 x = *this;
  while (!x.is_identity()) {
    x = x * *this;
    ++k;
  }
  return k;
}

Mat2 Mat2::operator*(const Mat2& o) const {
  const auto& c = ctx_;
  return Mat2(c, c.add(c.mul(e_[0], o.e_[0]), c.mul(e_[1], o.e_[2])),
              c.add(c.mul(e_[0], o.e_[1]), c.mul(e_[1], o.e_[3])),
              c.add(c.mul(e_[2], o.e_[0]), c.mul(e_[3], o.e_[2])),
              c.add(c.mul(e_[2], o.e_[1]), c.mul(e_[3], o.e_[3])));
}

ResidueVector Mat2::operator*(const ResidueVector& v) const {
  if (v.size() != 2) throw DimensionMismatch("Mat2 acts on rank-2 vectors");
  const auto& c = ctx_;
  return ResidueVector(c, {c.add(c.mul(e_[0], v[0]), c.mul(e_[1], v[1])),
                           c.add(c.mul(e_[2], v[0]), c.mul(e_[3], v[1]))});
}

Mat2 Mat2::reduced(int m) const {
  if (m < 1 || m > ctx_.n()) throw InvalidInput("reduction level out of range");
  ModulusContext lower = ctx_.with_exponent(m);
  return Mat2(lower, e_[0], e_[1], e_[2], e_[3]);
}

ResidueMatrix Mat2::as_matrix() const { return ResidueMatrix(ctx_, 2, 2, {e_[0], e_[1], e_[2], e_[3]}); }

ResidueMatrix Mat2::minus_identity() const {
  return ResidueMatrix(ctx_, 2, 2, {e_[0] - 1, e_[1], e_[2], e_[3] - 1});
}

std::uint64_t Mat2::key() const {
  const auto q = static_cast<std::uint64_t>(ctx_.modulus());
  if (q >= (1u << 16)) throw InvalidContext("matrix keys need p^n < 65536");
  auto u = [](Residue x) { return static_cast<std::uint64_t>(x); };
  return ((u(e_[0]) * q + u(e_[1])) * q + u(e_[2])) * q + u(e_[3]);
}

std::string Mat2::to_string() const {
  std::ostringstream os;
  os << "[[" << e_[0] << "," << e_[1] << "],[" << e_[2] << "," << e_[3] << "]]";
  return os.str();
}

std::size_t default_closure_cap() {
  if (const char* env = std::getenv("COHOMLAB_CAP")) {
    char* end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 5000;
}

// MatGroup

namespace {

std::vector<char> closure_mask(const MatGroup& g, const std::vector<std::size_t>& gens) {
  std::vector<char> in(g.order(), 0);
  std::vector<std::size_t> queue{g.identity_index()};
  in[g.identity_index()] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (auto s : gens) {
      const std::size_t y = g.multiply(queue[head], s);
      if (!in[y]) {
        in[y] = 1;
        queue.push_back(y);
      }
    }
  }
  return in;
}

}  // namespace

MatGroup MatGroup::from_elements(const ModulusContext& ctx, std::vector<Mat2> elements,
                                 std::vector<Mat2> generators) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  auto data = std::make_shared<Data>(Data{ctx, std::move(elements), {}, {}, {}, 0});
  data->keys.reserve(data->elements.size());
  for (const auto& e : data->elements) data->keys.push_back(e.key());

  const auto q = static_cast<std::uint64_t>(ctx.modulus());
  const std::uint64_t space = q * q * q * q;
  if (space <= 16 * data->keys.size() + 4096) {
    data->dense.assign(space, -1);
    for (std::size_t i = 0; i < data->keys.size(); ++i) data->dense[data->keys[i]] = static_cast<std::int32_t>(i);
  }
  const Mat2 id = Mat2::identity(ctx);
  auto it = std::lower_bound(data->keys.begin(), data->keys.end(), id.key());
  if (it == data->keys.end() || *it != id.key()) throw NotASubgroup("element set lacks the identity");
  data->identity = static_cast<std::size_t>(it - data->keys.begin());

  std::vector<Mat2> gens;
  for (auto& g : generators) {
    if (g.is_identity()) continue;
    if (std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(g);
  }
  if (gens.empty() && data->elements.size() > 1) {
    MatGroup partial(data);
    std::vector<std::size_t> chosen;
    std::vector<char> covered(data->elements.size(), 0);
    covered[data->identity] = 1;
    for (std::size_t i = 0; i < data->elements.size(); ++i) {
      if (covered[i]) continue;
      chosen.push_back(i);
      covered = closure_mask(partial, chosen);
    }
    for (auto i : chosen) gens.push_back(data->elements[i]);
  }
  auto full = std::make_shared<Data>(std::move(*data));
  full->generators = std::move(gens);
  return MatGroup(std::move(full));
}

std::optional<std::size_t> MatGroup::index_of(const Mat2& m) const {
  if (!(m.context() == d_->ctx)) return std::nullopt;
  const std::uint64_t k = m.key();
  if (!d_->dense.empty()) {
    const std::int32_t i = d_->dense[k];
    if (i < 0) return std::nullopt;
    return static_cast<std::size_t>(i);
  }
  auto it = std::lower_bound(d_->keys.begin(), d_->keys.end(), k);
  if (it == d_->keys.end() || *it != k) return std::nullopt;
  return static_cast<std::size_t>(it - d_->keys.begin());
}

std::size_t MatGroup::multiply(std::size_t i, std::size_t j) const {
  auto r = index_of(d_->elements[i] * d_->elements[j]);
  if (!r) throw NotASubgroup("element set is not closed under multiplication");
  return *r;
}

std::size_t MatGroup::inverse_index(std::size_t i) const {
  auto r = index_of(d_->elements[i].inverse());
  if (!r) throw NotASubgroup("element set is not closed under inverses");
  return *r;
}

bool MatGroup::is_subgroup_of(const MatGroup& other) const {
  if (!(context() == other.context())) return false;
  return std::includes(other.keys().begin(), other.keys().end(), keys().begin(), keys().end());
}

bool MatGroup::is_cyclic() const {
  const auto n = static_cast<std::int64_t>(order());
  return std::any_of(elements().begin(), elements().end(), [&](const Mat2& g) { return g.order() == n; });
}

std::string MatGroup::to_string() const {
  std::ostringstream os;
  os << "<";
  for (std::size_t i = 0; i < generators().size(); ++i) os << (i ? ", " : "") << generators()[i].to_string();
  os << "> order " << order() << " mod " << context().p() << "^" << context().n();
  return os.str();
}

MatGroup close_group(const std::vector<Mat2>& generators, const ModulusContext& ctx, std::size_t cap) {
  for (const auto& g : generators) {
    if (!(g.context() == ctx)) throw InvalidInput("generator modulus differs from context");
    if (!g.is_invertible()) throw NonInvertibleGenerator(g.to_string());
  }
  std::vector<Mat2> elements{Mat2::identity(ctx)};
  std::unordered_set<std::uint64_t> seen{elements[0].key()};
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (const auto& s : generators) {
      Mat2 y = elements[head] * s;
      if (seen.insert(y.key()).second) {
        if (elements.size() >= cap) throw CapExceeded("closure exceeds " + std::to_string(cap) + " elements");
        elements.push_back(y);
      }
    }
  }
  return MatGroup::from_elements(ctx, std::move(elements), generators);
}

// Example group

std::int64_t smallest_nonsquare(std::int64_t p) {
  std::vector<char> square(static_cast<std::size_t>(p), 0);
  for (std::int64_t x = 0; x < p; ++x) square[static_cast<std::size_t>(x * x % p)] = 1;
  for (std::int64_t m = 1; m < p; ++m)
    if (!square[static_cast<std::size_t>(m)]) return m;
  throw InvalidInput("no nonsquare modulo " + std::to_string(p));
}

Mat2 example_element(const ModulusContext& ctx, std::int64_t m, const TripleParam& t) {
  const std::int64_t p = ctx.p();
  const std::int64_t sign = t.a % 2 ? -1 : 1;
  const std::int64_t diag = 1 + p * t.b;
  return Mat2(ctx, diag, m * p * t.c, sign * p * t.c, sign * diag);
}

std::size_t ExampleGroup::index_of(const TripleParam& t) const {
  auto i = group.index_of(example_element(group.context(), m, t));
  if (!i) throw InvalidInput("triple outside the example group");
  return *i;
}

ExampleGroup make_example_group(std::int64_t p, std::optional<std::int64_t> m_override) {
  if (p == 2 || !is_prime(p)) throw InvalidInput("the example group needs an odd prime, got " + std::to_string(p));
  const std::int64_t m = m_override ? *m_override : smallest_nonsquare(p);
  {
    bool square = false;
    for (std::int64_t x = 0; x < p; ++x) square |= (x * x - m) % p == 0;
    if (square) throw InvalidInput("m = " + std::to_string(m) + " is a square mod " + std::to_string(p));
  }
  const ModulusContext ctx(p, 2);
  Mat2 d1(ctx, 1, 0, 0, -1), d2(ctx, 1 + p, 0, 0, 1 + p), d3(ctx, 1, m * p, p, 1);
  MatGroup g = close_group({d1, d2, d3}, ctx);

  std::vector<TripleParam> labels(g.order());
  std::vector<char> hit(g.order(), 0);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < p; ++b)
      for (int c = 0; c < p; ++c) {
        const Mat2 x = d1.pow(a) * d2.pow(b) * d3.pow(c);
        auto i = g.index_of(x);
        if (!i || hit[*i]) throw InvalidInput("triple parametrization is not a bijection");
        hit[*i] = 1;
        labels[*i] = TripleParam{a, b, c};
      }
  if (std::find(hit.begin(), hit.end(), 0) != hit.end())
    throw InvalidInput("triple parametrization misses elements");
  return ExampleGroup{g, m, d1, d2, d3, std::move(labels)};
}

MatGroup reduce_mod(const MatGroup& g, int m) {
  const auto& ctx = g.context();
  if (m < 1 || m > ctx.n()) throw InvalidInput("reduce_mod level out of range");
  if (m == ctx.n()) return g;
  std::vector<Mat2> elements, gens;
  elements.reserve(g.order());
  for (const auto& e : g.elements()) elements.push_back(e.reduced(m));
  for (const auto& s : g.generators()) gens.push_back(s.reduced(m));
  return MatGroup::from_elements(ctx.with_exponent(m), std::move(elements), std::move(gens));
}

SpecialSubgroups special_subgroups(const MatGroup& g) {
  std::vector<Mat2> d, u, l;
  for (const auto& e : g.elements()) {
    if (e.is_diagonal()) d.push_back(e);
    if (e.is_upper_unipotent()) u.push_back(e);
    if (e.is_lower_unipotent()) l.push_back(e);
  }
  const auto& ctx = g.context();
  return SpecialSubgroups{MatGroup::from_elements(ctx, std::move(d)), MatGroup::from_elements(ctx, std::move(u)),
                          MatGroup::from_elements(ctx, std::move(l))};
}

namespace {

using IndexSet = std::vector<std::uint32_t>;

IndexSet mask_to_set(const std::vector<char>& mask) {
  IndexSet s;
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (mask[i]) s.push_back(static_cast<std::uint32_t>(i));
  return s;
}

MatGroup group_from_set(const MatGroup& ambient, const IndexSet& s, const std::vector<std::size_t>& gens) {
  std::vector<Mat2> elements, generators;
  elements.reserve(s.size());
  for (auto i : s) elements.push_back(ambient.element(i));
  for (auto i : gens) generators.push_back(ambient.element(i));
  return MatGroup::from_elements(ambient.context(), std::move(elements), std::move(generators));
}

bool group_less(const MatGroup& x, const MatGroup& y) {
  if (x.order() != y.order()) return x.order() < y.order();
  return x.keys() < y.keys();
}

}  // namespace

std::vector<MatGroup> cyclic_subgroups(const MatGroup& g) {
  std::set<IndexSet> seen;
  std::vector<MatGroup> out;
  for (std::size_t i = 0; i < g.order(); ++i) {
    IndexSet s = mask_to_set(closure_mask(g, {i}));
    if (seen.insert(s).second) {
      std::vector<std::size_t> gens;
      if (i != g.identity_index()) gens.push_back(i);
      out.push_back(group_from_set(g, s, gens));
    }
  }
  std::sort(out.begin(), out.end(), group_less);
  return out;
}

std::vector<MatGroup> enumerate_subgroups(const MatGroup& g, std::size_t cap) {
  if (g.order() > cap) throw CapExceeded("subgroup enumeration of a group of order " + std::to_string(g.order()));
  struct Sub {
    std::vector<char> mask;
    std::vector<std::size_t> gens;
  };
  std::vector<Sub> subs;
  std::set<IndexSet> seen;
  std::vector<std::size_t> cyclic_gens;
  for (std::size_t i = 0; i < g.order(); ++i) {
    std::vector<std::size_t> gens;
    if (i != g.identity_index()) gens.push_back(i);
    auto mask = closure_mask(g, gens);
    if (seen.insert(mask_to_set(mask)).second) {
      subs.push_back(Sub{std::move(mask), gens});
      if (!gens.empty()) cyclic_gens.push_back(i);
    }
  }
  for (std::size_t idx = 0; idx < subs.size(); ++idx) {
    for (auto c : cyclic_gens) {
      if (subs[idx].mask[c]) continue;
      std::vector<std::size_t> gens = subs[idx].gens;
      gens.push_back(c);
      auto mask = closure_mask(g, gens);
      if (seen.insert(mask_to_set(mask)).second) subs.push_back(Sub{std::move(mask), std::move(gens)});
    }
  }
  std::vector<MatGroup> out;
  out.reserve(subs.size());
  for (const auto& s : subs) out.push_back(group_from_set(g, mask_to_set(s.mask), s.gens));
  std::sort(out.begin(), out.end(), group_less);
  return out;
}

MatGroup subgroup_generated(const MatGroup& ambient, const std::vector<Mat2>& generators) {
  std::vector<std::size_t> gens;
  for (const auto& s : generators) {
    auto i = ambient.index_of(s);
    if (!i) throw NotASubgroup("generator " + s.to_string() + " is not in the ambient group");
    if (*i != ambient.identity_index()) gens.push_back(*i);
  }
  return group_from_set(ambient, mask_to_set(closure_mask(ambient, gens)), gens);
}

MatGroup conjugate(const MatGroup& g, const Mat2& t) {
  if (!t.is_invertible()) throw NonInvertibleConjugator(t.to_string());
  const Mat2 ti = t.inverse();
  std::vector<Mat2> elements, gens;
  elements.reserve(g.order());
  for (const auto& e : g.elements()) elements.push_back(t * e * ti);
  for (const auto& s : g.generators()) gens.push_back(t * s * ti);
  return MatGroup::from_elements(g.context(), std::move(elements), std::move(gens));
}

std::vector<Mat2> invertible_matrices(const ModulusContext& ctx) {
  const std::int64_t q = ctx.modulus();
  std::vector<Mat2> out;
  for (std::int64_t a = 0; a < q; ++a)
    for (std::int64_t b = 0; b < q; ++b)
      for (std::int64_t c = 0; c < q; ++c)
        for (std::int64_t d = 0; d < q; ++d) {
          Mat2 m(ctx, a, b, c, d);
          if (m.is_invertible()) out.push_back(m);
        }
  return out;
}

std::optional<Triangularizer> find_triangularizing_conjugator(const MatGroup& g) {
  const auto& ctx = g.context();
  if (ctx.modulus() > 25) throw BudgetExceeded("conjugator search needs p^n <= 25");
  auto try_t = [&](const Mat2& t) -> std::optional<Triangularizer> {
    const Mat2 ti = t.inverse();
    bool upper = true, lower = true;
    for (const auto& s : g.generators()) {
      const Mat2 x = t * s * ti;
      upper = upper && x.is_upper_triangular();
      lower = lower && x.is_lower_triangular();
      if (!upper && !lower) return std::nullopt;
    }
    if (upper) return Triangularizer{t, Triangular::upper};
    if (lower) return Triangularizer{t, Triangular::lower};
    return std::nullopt;
  };
  if (auto r = try_t(Mat2::identity(ctx))) return r;
  for (const auto& t : invertible_matrices(ctx))
    if (auto r = try_t(t)) return r;
  return std::nullopt;
}

MatGroup general_linear_group(const ModulusContext& ctx) {
  return MatGroup::from_elements(ctx, invertible_matrices(ctx));
}

MatGroup full_diagonal_group(const ModulusContext& ctx) {
  std::vector<Mat2> elements;
  for (std::int64_t x = 1; x < ctx.modulus(); ++x)
    for (std::int64_t y = 1; y < ctx.modulus(); ++y)
      if (ctx.is_unit(x) && ctx.is_unit(y)) elements.push_back(Mat2::diagonal(ctx, x, y));
  return MatGroup::from_elements(ctx, std::move(elements));
}

MatGroup full_upper_triangular_group(const ModulusContext& ctx) {
  std::vector<Mat2> elements;
  const std::int64_t q = ctx.modulus();
  for (std::int64_t x = 1; x < q; ++x)
    for (std::int64_t y = 0; y < q; ++y)
      for (std::int64_t z = 1; z < q; ++z)
        if (ctx.is_unit(x) && ctx.is_unit(z)) elements.emplace_back(ctx, x, y, 0, z);
  return MatGroup::from_elements(ctx, std::move(elements));
}

}  // namespace cohomlab
