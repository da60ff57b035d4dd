#include "cohomlab/zmod.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace cohomlab {

namespace {

using Row = std::vector<Residue>;

bool row_is_zero(const Row& r) {
  return std::all_of(r.begin(), r.end(), [](Residue x) { return x == 0; });
}

// r -= f * s, starting at column `from`.
void axpy(const ModulusContext& ctx, Row& r, Residue f, const Row& s, std::size_t from = 0) {
  if (f == 0) return;
  for (std::size_t j = from; j < r.size(); ++j) {
    if (s[j] != 0) r[j] = ctx.sub(r[j], ctx.mul(f, s[j]));
  }
}

std::size_t pivot_column(const Row& r) {
  for (std::size_t j = 0; j < r.size(); ++j)
    if (r[j] != 0) return j;
  return r.size();
}

// Howell form of the row span. Rows come back sorted by pivot column, each
// pivot is p^v, entries above a pivot p^v lie in [0, p^v).
std::vector<Row> howell_rows(const ModulusContext& ctx, std::vector<Row> work, std::size_t cols) {
  const int n = ctx.n();
  std::erase_if(work, row_is_zero);
  std::vector<Row> pivots;
  std::vector<std::size_t> pivot_cols;
  std::vector<int> pivot_vals;

  for (std::size_t c = 0; c < cols && !work.empty(); ++c) {
    std::size_t best = work.size();
    int best_val = n;
    for (std::size_t i = 0; i < work.size(); ++i) {
      int v = ctx.valuation(work[i][c]);
      if (v < best_val) {
        best_val = v;
        best = i;
        if (v == 0) break;
      }
    }
    if (best == work.size()) continue;

    Row r = std::move(work[best]);
    work[best] = std::move(work.back());
    work.pop_back();

    const std::int64_t pv = ctx.p_power(best_val);
    const Residue unit = unit_inverse(r[c] / pv, ctx);
    for (std::size_t j = c; j < cols; ++j) r[j] = ctx.mul(r[j], unit);

    for (auto& w : work) {
      if (w[c] != 0) axpy(ctx, w, w[c] / pv, r, c);
    }
    if (best_val > 0) {
      Row s(cols, 0);
      const std::int64_t scale = ctx.p_power(n - best_val);
      for (std::size_t j = c + 1; j < cols; ++j) s[j] = ctx.mul(r[j], scale);
      if (!row_is_zero(s)) work.push_back(std::move(s));
    }
    std::erase_if(work, row_is_zero);

    pivots.push_back(std::move(r));
    pivot_cols.push_back(c);
    pivot_vals.push_back(best_val);
  }

  for (std::size_t i = 0; i < pivots.size(); ++i) {
    const std::size_t c = pivot_cols[i];
    const std::int64_t pv = ctx.p_power(pivot_vals[i]);
    for (std::size_t j = 0; j < i; ++j) {
      Residue f = pivots[j][c] / pv;
      axpy(ctx, pivots[j], f, pivots[i], c);
    }
  }
  return pivots;
}

// Reduces v against Howell rows restricted to the first `limit` columns.
// Returns false if v is not in the span of those rows. On success v has its
// first `limit` entries zeroed and coeffs[i] holds the multiple of row i used.
bool reduce_against(const ModulusContext& ctx, const std::vector<Row>& rows, Row& v,
                    std::size_t limit, std::vector<Residue>* coeffs) {
  if (coeffs) coeffs->assign(rows.size(), 0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::size_t c = pivot_column(rows[i]);
    if (c >= limit) break;
    if (v[c] == 0) continue;
    const std::int64_t pv = rows[i][c];
    if (v[c] % pv != 0) return false;
    const Residue f = v[c] / pv;
    axpy(ctx, v, f, rows[i], c);
    if (coeffs) (*coeffs)[i] = f;
  }
  for (std::size_t j = 0; j < limit; ++j)
    if (v[j] != 0) return false;
  return true;
}

std::vector<Row> to_rows(const std::vector<ResidueVector>& vs) {
  std::vector<Row> out;
  out.reserve(vs.size());
  for (const auto& v : vs) out.push_back(v.entries());
  return out;
}

std::vector<Row> to_rows(const ResidueMatrix& m) {
  std::vector<Row> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto r = m.row_span(i);
    out[i].assign(r.begin(), r.end());
  }
  return out;
}

// Howell-reduces rows [left | right] and returns the right parts of the rows
// whose left part vanished, in canonical form.
std::vector<Row> right_parts_with_zero_left(const ModulusContext& ctx, std::vector<Row> rows,
                                            std::size_t left, std::size_t right) {
  auto h = howell_rows(ctx, std::move(rows), left + right);
  std::vector<Row> tail;
  for (auto& r : h) {
    if (pivot_column(r) >= left) tail.emplace_back(r.begin() + static_cast<std::ptrdiff_t>(left), r.end());
  }
  return howell_rows(ctx, std::move(tail), right);
}

}  // namespace

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

ModulusContext::ModulusContext(std::int64_t p, int n) : p_(p), n_(n), q_(1) {
  if (!is_prime(p)) throw InvalidContext("p = " + std::to_string(p) + " is not prime");
  if (n < 1) throw InvalidContext("exponent must be positive");
  for (int i = 0; i < n; ++i) {
    if (q_ > (std::int64_t{1} << 31) / p) throw InvalidContext("p^n too large");
    q_ *= p;
  }
  if (q_ >= (std::int64_t{1} << 31)) throw InvalidContext("p^n too large");
}

Residue ModulusContext::pow(Residue a, std::uint64_t e) const {
  Residue result = reduce(1);
  Residue base = reduce(a);
  while (e) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

int ModulusContext::valuation(Residue a) const {
  if (a == 0) return n_;
  int v = 0;
  while (a % p_ == 0) {
    a /= p_;
    ++v;
  }
  return v;
}

Residue unit_inverse(Residue a, const ModulusContext& ctx) {
  a = ctx.reduce(a);
  if (!ctx.is_unit(a)) throw NotAUnit(std::to_string(a) + " mod " + std::to_string(ctx.modulus()));
  // Extended Euclid on (a, q).
  std::int64_t r0 = ctx.modulus(), r1 = a, s0 = 0, s1 = 1;
  while (r1 != 0) {
    std::int64_t qt = r0 / r1;
    std::int64_t r2 = r0 - qt * r1;
    std::int64_t s2 = s0 - qt * s1;
    r0 = r1;
    r1 = r2;
    s0 = s1;
    s1 = s2;
  }
  return ctx.reduce(s0);
}

// ResidueVector

ResidueVector::ResidueVector(const ModulusContext& ctx, std::vector<std::int64_t> entries)
    : ctx_(ctx), entries_(std::move(entries)) {
  for (auto& e : entries_) e = ctx_.reduce(e);
}

bool ResidueVector::is_zero() const { return row_is_zero(entries_); }

ResidueVector ResidueVector::operator+(const ResidueVector& o) const {
  if (o.size() != size()) throw DimensionMismatch("vector sum");
  ResidueVector r(*this);
  for (std::size_t i = 0; i < size(); ++i) r.entries_[i] = ctx_.add(entries_[i], o.entries_[i]);
  return r;
}

ResidueVector ResidueVector::operator-(const ResidueVector& o) const {
  if (o.size() != size()) throw DimensionMismatch("vector difference");
  ResidueVector r(*this);
  for (std::size_t i = 0; i < size(); ++i) r.entries_[i] = ctx_.sub(entries_[i], o.entries_[i]);
  return r;
}

ResidueVector ResidueVector::scaled(Residue s) const {
  ResidueVector r(*this);
  s = ctx_.reduce(s);
  for (auto& e : r.entries_) e = ctx_.mul(e, s);
  return r;
}

std::string ResidueVector::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < size(); ++i) os << (i ? "," : "") << entries_[i];
  os << ')';
  return os.str();
}

// ResidueMatrix

ResidueMatrix::ResidueMatrix(const ModulusContext& ctx, std::size_t rows, std::size_t cols,
                             std::vector<std::int64_t> data)
    : ctx_(ctx), rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) throw DimensionMismatch("matrix data size");
  for (auto& e : data_) e = ctx_.reduce(e);
}

ResidueMatrix ResidueMatrix::identity(const ModulusContext& ctx, std::size_t n) {
  ResidueMatrix m(ctx, n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = ctx.reduce(1);
  return m;
}

ResidueMatrix ResidueMatrix::from_rows(const ModulusContext& ctx, std::size_t cols,
                                       const std::vector<ResidueVector>& rows) {
  ResidueMatrix m(ctx, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw DimensionMismatch("row length");
    std::copy(rows[i].entries().begin(), rows[i].entries().end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * cols));
  }
  return m;
}

ResidueVector ResidueMatrix::row(std::size_t i) const {
  auto r = row_span(i);
  return ResidueVector(ctx_, std::vector<std::int64_t>(r.begin(), r.end()));
}

std::vector<ResidueVector> ResidueMatrix::row_list() const {
  std::vector<ResidueVector> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

ResidueMatrix ResidueMatrix::transposed() const {
  ResidueMatrix t(ctx_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.data_[j * rows_ + i] = at(i, j);
  return t;
}

ResidueVector ResidueMatrix::operator*(const ResidueVector& x) const {
  if (x.size() != cols_) throw DimensionMismatch("matrix-vector product");
  ResidueVector y(ctx_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Residue acc = 0;
    for (std::size_t j = 0; j < cols_; ++j) acc = ctx_.add(acc, ctx_.mul(at(i, j), x[j]));
    y.set(i, acc);
  }
  return y;
}

ResidueMatrix ResidueMatrix::operator*(const ResidueMatrix& o) const {
  if (cols_ != o.rows_) throw DimensionMismatch("matrix product");
  ResidueMatrix r(ctx_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Residue a = at(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        r.data_[i * o.cols_ + j] = ctx_.add(r.data_[i * o.cols_ + j], ctx_.mul(a, o.at(k, j)));
    }
  return r;
}

// Submodule

Submodule Submodule::zero(const ModulusContext& ctx, std::size_t ambient_rank) {
  return Submodule(ctx, ambient_rank, {});
}

Submodule Submodule::whole(const ModulusContext& ctx, std::size_t ambient_rank) {
  return span(ResidueMatrix::identity(ctx, ambient_rank));
}

Submodule Submodule::span(const ModulusContext& ctx, std::size_t ambient_rank,
                          const std::vector<ResidueVector>& vectors) {
  for (const auto& v : vectors)
    if (v.size() != ambient_rank) throw DimensionMismatch("span generator length");
  auto h = howell_rows(ctx, to_rows(vectors), ambient_rank);
  std::vector<ResidueVector> gens;
  gens.reserve(h.size());
  for (auto& r : h) gens.emplace_back(ctx, std::move(r));
  return Submodule(ctx, ambient_rank, std::move(gens));
}

Submodule Submodule::span(const ResidueMatrix& rows) {
  auto h = howell_rows(rows.context(), to_rows(rows), rows.cols());
  std::vector<ResidueVector> gens;
  for (auto& r : h) gens.emplace_back(rows.context(), std::move(r));
  return Submodule(rows.context(), rows.cols(), std::move(gens));
}

ResidueMatrix Submodule::generator_matrix() const { return ResidueMatrix::from_rows(ctx_, rank_, gens_); }

bool Submodule::contains(const ResidueVector& v) const {
  if (v.size() != rank_) throw DimensionMismatch("membership test");
  Row r = v.entries();
  return reduce_against(ctx_, to_rows(gens_), r, rank_, nullptr);
}

bool Submodule::contains(const Submodule& other) const {
  return std::all_of(other.gens_.begin(), other.gens_.end(),
                     [&](const ResidueVector& g) { return contains(g); });
}

int Submodule::log_order() const {
  int total = 0;
  for (const auto& g : gens_) total += ctx_.n() - ctx_.valuation(g[pivot_column(g.entries())]);
  return total;
}

std::int64_t Submodule::order() const {
  const int e = log_order();
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > std::numeric_limits<std::int64_t>::max() / ctx_.p()) throw CapExceeded("submodule order overflows");
    r *= ctx_.p();
  }
  return r;
}

// Operations

ResidueMatrix canonical_row_form(const ResidueMatrix& m) {
  auto h = howell_rows(m.context(), to_rows(m), m.cols());
  ResidueMatrix out(m.context(), h.size(), m.cols());
  for (std::size_t i = 0; i < h.size(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.set(i, j, h[i][j]);
  return out;
}

std::optional<ResidueVector> solve_linear(const ResidueMatrix& a, const ResidueVector& b) {
  if (b.size() != a.rows()) throw DimensionMismatch("solve_linear: b has wrong length");
  const auto& ctx = a.context();
  const std::size_t m = a.rows(), k = a.cols();
  // Rows [column_j(A)^T | e_j]; reducing b^T against them tracks x.
  std::vector<Row> rows(k, Row(m + k, 0));
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < m; ++i) rows[j][i] = a.at(i, j);
    rows[j][m + j] = 1 % ctx.modulus();
  }
  auto h = howell_rows(ctx, std::move(rows), m + k);
  Row v(m + k, 0);
  std::copy(b.entries().begin(), b.entries().end(), v.begin());
  std::vector<Residue> coeffs;
  if (!reduce_against(ctx, h, v, m, &coeffs)) return std::nullopt;
  ResidueVector x(ctx, k);
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (coeffs[i] == 0) continue;
    for (std::size_t j = 0; j < k; ++j) x.set(j, ctx.add(x[j], ctx.mul(coeffs[i], h[i][m + j])));
  }
  return x;
}

bool image_contains(const ResidueMatrix& a, const ResidueVector& b) {
  return solve_linear(a, b).has_value();
}

Submodule kernel(const ResidueMatrix& a) {
  const auto& ctx = a.context();
  const std::size_t k = a.cols();
  auto h = howell_rows(ctx, to_rows(a), k);
  const std::size_t hr = h.size();
  std::vector<Row> rows(k, Row(hr + k, 0));
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < hr; ++i) rows[j][i] = h[i][j];
    rows[j][hr + j] = 1 % ctx.modulus();
  }
  auto tail = right_parts_with_zero_left(ctx, std::move(rows), hr, k);
  std::vector<ResidueVector> gens;
  for (auto& r : tail) gens.emplace_back(ctx, std::move(r));
  return Submodule::span(ctx, k, gens);
}

Submodule intersect(const Submodule& a, const Submodule& b) {
  if (!(a.context() == b.context()) || a.ambient_rank() != b.ambient_rank())
    throw DimensionMismatch("intersect");
  const std::size_t k = a.ambient_rank();
  std::vector<Row> rows;
  for (const auto& g : a.generators()) {
    Row r(2 * k);
    std::copy(g.entries().begin(), g.entries().end(), r.begin());
    std::copy(g.entries().begin(), g.entries().end(), r.begin() + static_cast<std::ptrdiff_t>(k));
    rows.push_back(std::move(r));
  }
  for (const auto& g : b.generators()) {
    Row r(2 * k, 0);
    std::copy(g.entries().begin(), g.entries().end(), r.begin());
    rows.push_back(std::move(r));
  }
  auto tail = right_parts_with_zero_left(a.context(), std::move(rows), k, k);
  std::vector<ResidueVector> gens;
  for (auto& r : tail) gens.emplace_back(a.context(), std::move(r));
  return Submodule::span(a.context(), k, gens);
}

Submodule preimage(const ResidueMatrix& images, const Submodule& target) {
  if (images.cols() != target.ambient_rank()) throw DimensionMismatch("preimage");
  const auto& ctx = images.context();
  const std::size_t k = images.cols(), r = images.rows();
  std::vector<Row> rows;
  rows.reserve(r + target.generators().size());
  for (std::size_t i = 0; i < r; ++i) {
    Row row(k + r, 0);
    auto src = images.row_span(i);
    std::copy(src.begin(), src.end(), row.begin());
    row[k + i] = 1 % ctx.modulus();
    rows.push_back(std::move(row));
  }
  for (const auto& g : target.generators()) {
    Row row(k + r, 0);
    std::copy(g.entries().begin(), g.entries().end(), row.begin());
    rows.push_back(std::move(row));
  }
  auto tail = right_parts_with_zero_left(ctx, std::move(rows), k, r);
  std::vector<ResidueVector> gens;
  for (auto& t : tail) gens.emplace_back(ctx, std::move(t));
  return Submodule::span(ctx, r, gens);
}

Submodule map_rows(const Submodule& coefficients, const ResidueMatrix& rows) {
  if (coefficients.ambient_rank() != rows.rows()) throw DimensionMismatch("map_rows");
  const auto& ctx = rows.context();
  std::vector<ResidueVector> images;
  for (const auto& c : coefficients.generators()) {
    ResidueVector img(ctx, rows.cols());
    for (std::size_t i = 0; i < rows.rows(); ++i) {
      if (c[i] == 0) continue;
      for (std::size_t j = 0; j < rows.cols(); ++j) img.set(j, ctx.add(img[j], ctx.mul(c[i], rows.at(i, j))));
    }
    images.push_back(std::move(img));
  }
  return Submodule::span(ctx, rows.cols(), images);
}

SmithForm smith_form(const ResidueMatrix& input) {
  const auto& ctx = input.context();
  const std::size_t m = input.rows(), k = input.cols();
  auto a = to_rows(input);
  auto u = to_rows(ResidueMatrix::identity(ctx, m));
  auto v = to_rows(ResidueMatrix::identity(ctx, k));
  auto vinv = to_rows(ResidueMatrix::identity(ctx, k));
  const std::size_t diag = std::min(m, k);
  std::vector<int> vals(diag, ctx.n());

  for (std::size_t t = 0; t < diag; ++t) {
    std::size_t bi = m, bj = k;
    int best = ctx.n();
    for (std::size_t i = t; i < m && best > 0; ++i)
      for (std::size_t j = t; j < k; ++j) {
        int val = ctx.valuation(a[i][j]);
        if (val < best) {
          best = val;
          bi = i;
          bj = j;
          if (val == 0) break;
        }
      }
    if (bi == m) break;
    std::swap(a[t], a[bi]);
    std::swap(u[t], u[bi]);
    if (bj != t) {
      for (auto& row : a) std::swap(row[t], row[bj]);
      for (auto& row : v) std::swap(row[t], row[bj]);
      std::swap(vinv[t], vinv[bj]);
    }
    const std::int64_t pv = ctx.p_power(best);
    const Residue unit = unit_inverse(a[t][t] / pv, ctx);
    for (auto& x : a[t]) x = ctx.mul(x, unit);
    for (auto& x : u[t]) x = ctx.mul(x, unit);

    for (std::size_t i = t + 1; i < m; ++i) {
      if (a[i][t] == 0) continue;
      const Residue f = a[i][t] / pv;
      axpy(ctx, a[i], f, a[t]);
      axpy(ctx, u[i], f, u[t]);
    }
    for (std::size_t j = t + 1; j < k; ++j) {
      if (a[t][j] == 0) continue;
      const Residue f = a[t][j] / pv;
      for (std::size_t i = 0; i < m; ++i) a[i][j] = ctx.sub(a[i][j], ctx.mul(f, a[i][t]));
      for (std::size_t i = 0; i < k; ++i) v[i][j] = ctx.sub(v[i][j], ctx.mul(f, v[i][t]));
      for (std::size_t c = 0; c < k; ++c) vinv[t][c] = ctx.add(vinv[t][c], ctx.mul(f, vinv[j][c]));
    }
    vals[t] = best;
  }

  auto pack = [&](const std::vector<Row>& rows, std::size_t r, std::size_t c) {
    ResidueMatrix out(ctx, r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) out.set(i, j, rows[i][j]);
    return out;
  };
  return SmithForm{pack(u, m, m), pack(v, k, k), pack(vinv, k, k), std::move(vals)};
}

QuotientStructure quotient_structure(const Submodule& s, const Submodule& t) {
  if (!(s.context() == t.context()) || s.ambient_rank() != t.ambient_rank())
    throw DimensionMismatch("quotient of submodules in different ambients");
  if (!s.contains(t)) throw NotASubmodule("T is not contained in S");
  const auto& ctx = s.context();
  const ResidueMatrix sg = s.generator_matrix();
  const std::size_t r = sg.rows();
  QuotientStructure out;
  if (r == 0) return out;

  const Submodule relations = preimage(sg, t);
  const ResidueMatrix rel = relations.generator_matrix();
  std::vector<int> vals(r, ctx.n());
  ResidueMatrix vinv = ResidueMatrix::identity(ctx, r);
  if (rel.rows() > 0) {
    SmithForm sf = smith_form(rel);
    for (std::size_t i = 0; i < sf.valuations.size(); ++i) vals[i] = sf.valuations[i];
    vinv = sf.v_inverse;
  }
  for (std::size_t i = 0; i < r; ++i) {
    if (vals[i] == 0) continue;
    out.invariants.push_back(ctx.p_power(vals[i]));
    ResidueVector lift(ctx, s.ambient_rank());
    for (std::size_t j = 0; j < r; ++j) {
      const Residue c = vinv.at(i, j);
      if (c == 0) continue;
      lift = lift + sg.row(j).scaled(c);
    }
    out.generators.push_back(std::move(lift));
  }
  // Smith valuations come out ascending; keep the pairing when sorting.
  std::vector<std::size_t> order(out.invariants.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return out.invariants[x] < out.invariants[y]; });
  QuotientStructure sorted;
  for (auto i : order) {
    sorted.invariants.push_back(out.invariants[i]);
    sorted.generators.push_back(out.generators[i]);
  }
  return sorted;
}

std::vector<std::int64_t> quotient_invariants(const Submodule& s, const Submodule& t) {
  return quotient_structure(s, t).invariants;
}

}  // namespace cohomlab
