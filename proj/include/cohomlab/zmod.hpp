#pragma once

// Exact arithmetic and linear algebra over the chain ring Z/p^nZ.
//
// Z/p^nZ has zero divisors, so plain Gaussian elimination does not decide
// membership or equality of submodules. Everything here goes through the
// Howell form (echelon form with pivots p^v, reduced entries above pivots
// and the saturation property) and a Smith form over the ring.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cohomlab/error.hpp"

namespace cohomlab {

using Residue = std::int64_t;

class ModulusContext {
 public:
  /// Throws InvalidContext unless p is prime, n >= 1 and p^n < 2^31.
  ModulusContext(std::int64_t p, int n);

  std::int64_t p() const { return p_; }
  int n() const { return n_; }
  std::int64_t modulus() const { return q_; }

  Residue reduce(std::int64_t x) const {
    x %= q_;
    return x < 0 ? x + q_ : x;
  }
  Residue add(Residue a, Residue b) const {
    Residue s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  Residue sub(Residue a, Residue b) const {
    Residue s = a - b;
    return s < 0 ? s + q_ : s;
  }
  Residue neg(Residue a) const { return a == 0 ? 0 : q_ - a; }
  Residue mul(Residue a, Residue b) const { return (a * b) % q_; }
  Residue pow(Residue a, std::uint64_t e) const;

  /// p-adic valuation of a canonical residue; the valuation of 0 is n.
  int valuation(Residue a) const;
  bool is_unit(Residue a) const { return a % p_ != 0; }
  /// p^k as an integer for 0 <= k <= n (p^n is the modulus itself).
  std::int64_t p_power(int k) const {
    std::int64_t r = 1;
    for (int i = 0; i < k; ++i) r *= p_;
    return r;
  }

  /// The same prime at a different exponent.
  ModulusContext with_exponent(int n) const { return ModulusContext(p_, n); }

  bool operator==(const ModulusContext& o) const { return p_ == o.p_ && n_ == o.n_; }

 private:
  std::int64_t p_;
  int n_;
  std::int64_t q_;
};

bool is_prime(std::int64_t p);

Residue unit_inverse(Residue a, const ModulusContext& ctx);

class ResidueVector {
 public:
  ResidueVector(const ModulusContext& ctx, std::size_t size) : ctx_(ctx), entries_(size, 0) {}
  /// Entries are reduced into [0, p^n).
  ResidueVector(const ModulusContext& ctx, std::vector<std::int64_t> entries);

  const ModulusContext& context() const { return ctx_; }
  std::size_t size() const { return entries_.size(); }
  Residue operator[](std::size_t i) const { return entries_[i]; }
  void set(std::size_t i, std::int64_t v) { entries_[i] = ctx_.reduce(v); }
  const std::vector<Residue>& entries() const { return entries_; }

  bool is_zero() const;
  ResidueVector operator+(const ResidueVector& o) const;
  ResidueVector operator-(const ResidueVector& o) const;
  ResidueVector scaled(Residue s) const;

  bool operator==(const ResidueVector& o) const {
    return ctx_ == o.ctx_ && entries_ == o.entries_;
  }
  bool operator<(const ResidueVector& o) const { return entries_ < o.entries_; }

  std::string to_string() const;

 private:
  ModulusContext ctx_;
  std::vector<Residue> entries_;
};

class ResidueMatrix {
 public:
  ResidueMatrix(const ModulusContext& ctx, std::size_t rows, std::size_t cols)
      : ctx_(ctx), rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  /// Row-major integer entries, reduced into [0, p^n).
  ResidueMatrix(const ModulusContext& ctx, std::size_t rows, std::size_t cols,
                std::vector<std::int64_t> data);

  static ResidueMatrix identity(const ModulusContext& ctx, std::size_t n);
  static ResidueMatrix from_rows(const ModulusContext& ctx, std::size_t cols,
                                 const std::vector<ResidueVector>& rows);

  const ModulusContext& context() const { return ctx_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Residue at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, std::int64_t v) { data_[i * cols_ + j] = ctx_.reduce(v); }
  std::span<const Residue> row_span(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  ResidueVector row(std::size_t i) const;
  std::vector<ResidueVector> row_list() const;

  ResidueMatrix transposed() const;
  ResidueVector operator*(const ResidueVector& x) const;
  ResidueMatrix operator*(const ResidueMatrix& o) const;

  bool operator==(const ResidueMatrix& o) const {
    return ctx_ == o.ctx_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  ModulusContext ctx_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Residue> data_;
};

/// A submodule of (Z/p^nZ)^k held by its Howell-form generators, so that
/// equal submodules have identical generator lists.
class Submodule {
 public:
  static Submodule zero(const ModulusContext& ctx, std::size_t ambient_rank);
  static Submodule whole(const ModulusContext& ctx, std::size_t ambient_rank);
  static Submodule span(const ModulusContext& ctx, std::size_t ambient_rank,
                        const std::vector<ResidueVector>& vectors);
  static Submodule span(const ResidueMatrix& rows);

  const ModulusContext& context() const { return ctx_; }
  std::size_t ambient_rank() const { return rank_; }
  const std::vector<ResidueVector>& generators() const { return gens_; }
  ResidueMatrix generator_matrix() const;

  bool is_zero() const { return gens_.empty(); }
  bool contains(const ResidueVector& v) const;
  bool contains(const Submodule& other) const;

  /// log_p of the number of elements.
  int log_order() const;
  /// Number of elements; throws CapExceeded if it does not fit in 63 bits.
  std::int64_t order() const;

  bool operator==(const Submodule& o) const {
    return ctx_ == o.ctx_ && rank_ == o.rank_ && gens_ == o.gens_;
  }

 private:
  Submodule(const ModulusContext& ctx, std::size_t rank, std::vector<ResidueVector> gens)
      : ctx_(ctx), rank_(rank), gens_(std::move(gens)) {}

  ModulusContext ctx_;
  std::size_t rank_;
  std::vector<ResidueVector> gens_;
};

ResidueMatrix canonical_row_form(const ResidueMatrix& m);

/// Some x with A x = b, or nullopt. Throws DimensionMismatch.
std::optional<ResidueVector> solve_linear(const ResidueMatrix& a, const ResidueVector& b);

Submodule kernel(const ResidueMatrix& a);

bool image_contains(const ResidueMatrix& a, const ResidueVector& b);

/// Invariant factors p^e (e >= 1, ascending) of S/T. Throws NotASubmodule
/// unless T is contained in S.
std::vector<std::int64_t> quotient_invariants(const Submodule& s, const Submodule& t);

/// Invariant factors of S/T together with one lift in S of each cyclic
/// factor's generator (same order as the factors).
struct QuotientStructure {
  std::vector<std::int64_t> invariants;
  std::vector<ResidueVector> generators;
};
QuotientStructure quotient_structure(const Submodule& s, const Submodule& t);

Submodule intersect(const Submodule& a, const Submodule& b);

/// { t : sum_i t_i * images.row(i) lies in target } as a submodule of
/// (Z/p^nZ)^{images.rows()}.
Submodule preimage(const ResidueMatrix& images, const Submodule& target);

/// Image of a submodule of coefficient space under t -> sum_i t_i * rows(i).
Submodule map_rows(const Submodule& coefficients, const ResidueMatrix& rows);

/// Smith form over Z/p^nZ: U * A * V = diag(p^{v_0}, p^{v_1}, ...), with
/// U, V invertible. valuations has min(rows, cols) entries; a zero diagonal
/// entry has valuation n. v_inverse = V^{-1}.
struct SmithForm {
  ResidueMatrix u;
  ResidueMatrix v;
  ResidueMatrix v_inverse;
  std::vector<int> valuations;
};
SmithForm smith_form(const ResidueMatrix& a);

}  // namespace cohomlab
