#pragma once

// 2x2 matrices over Z/p^nZ and the finite groups they generate.

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cohomlab/zmod.hpp"

namespace cohomlab {

class Mat2 {
 public:
  Mat2(const ModulusContext& ctx, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);

  static Mat2 identity(const ModulusContext& ctx) { return Mat2(ctx, 1, 0, 0, 1); }
  static Mat2 diagonal(const ModulusContext& ctx, std::int64_t x, std::int64_t y) {
    return Mat2(ctx, x, 0, 0, y);
  }

  const ModulusContext& context() const { return ctx_; }
  Residue a() const { return e_[0]; }
  Residue b() const { return e_[1]; }
  Residue c() const { return e_[2]; }
  Residue d() const { return e_[3]; }
  Residue entry(int row, int col) const { return e_[static_cast<std::size_t>(2 * row + col)]; }

  Residue det() const { return ctx_.sub(ctx_.mul(e_[0], e_[3]), ctx_.mul(e_[1], e_[2])); }
  bool is_invertible() const { return ctx_.is_unit(det()); }
  /// Throws NotAUnit for singular matrices.
  Mat2 inverse() const;
  /// Negative exponents use the inverse.
  Mat2 pow(std::int64_t e) const;
  /// Multiplicative order; requires an invertible matrix.
  std::int64_t order() const;

  Mat2 operator*(const Mat2& o) const;
  ResidueVector operator*(const ResidueVector& v) const;
  Mat2 reduced(int m) const;
  ResidueMatrix as_matrix() const;
  /// this - I as a 2x2 ResidueMatrix.
  ResidueMatrix minus_identity() const;

  bool is_identity() const { return e_[0] == 1 % ctx_.modulus() && e_[1] == 0 && e_[2] == 0 && e_[3] == e_[0]; }
  bool is_diagonal() const { return e_[1] == 0 && e_[2] == 0; }
  bool is_upper_triangular() const { return e_[2] == 0; }
  bool is_lower_triangular() const { return e_[1] == 0; }
  /// [[1, x], [0, 1]]
  bool is_upper_unipotent() const { return e_[2] == 0 && e_[0] == 1 && e_[3] == 1; }
  /// [[1, 0], [x, 1]]
  bool is_lower_unipotent() const { return e_[1] == 0 && e_[0] == 1 && e_[3] == 1; }

  /// Lexicographic key on (a, b, c, d); requires p^n < 2^16.
  std::uint64_t key() const;

  bool operator==(const Mat2& o) const { return ctx_ == o.ctx_ && e_ == o.e_; }
  bool operator<(const Mat2& o) const { return e_ < o.e_; }

  std::string to_string() const;

 private:
  ModulusContext ctx_;
  std::array<Residue, 4> e_;
};

/// Default closure cap: 5000 elements, overridden by COHOMLAB_CAP.
std::size_t default_closure_cap();

/// A finite subgroup of GL_2(Z/p^nZ). Immutable; copies share storage.
/// Elements are sorted lexicographically on (a, b, c, d).
class MatGroup {
 public:
  /// Trusted constructor for a set already known to be a group. If
  /// generators is empty a generating set is chosen greedily in element order.
  static MatGroup from_elements(const ModulusContext& ctx, std::vector<Mat2> elements,
                                std::vector<Mat2> generators = {});

  const ModulusContext& context() const { return d_->ctx; }
  std::size_t order() const { return d_->elements.size(); }
  const std::vector<Mat2>& elements() const { return d_->elements; }
  const Mat2& element(std::size_t i) const { return d_->elements[i]; }
  const std::vector<Mat2>& generators() const { return d_->generators; }

  std::optional<std::size_t> index_of(const Mat2& m) const;
  bool contains(const Mat2& m) const { return index_of(m).has_value(); }
  std::size_t identity_index() const { return d_->identity; }
  /// Index of element(i) * element(j).
  std::size_t multiply(std::size_t i, std::size_t j) const;
  std::size_t inverse_index(std::size_t i) const;

  bool is_subgroup_of(const MatGroup& other) const;
  bool is_cyclic() const;
  /// Element keys in canonical order; equal groups have equal key lists.
  const std::vector<std::uint64_t>& keys() const { return d_->keys; }

  bool operator==(const MatGroup& o) const {
    return context() == o.context() && d_->keys == o.d_->keys;
  }

  std::string to_string() const;

 private:
  struct Data {
    ModulusContext ctx;
    std::vector<Mat2> elements;
    std::vector<std::uint64_t> keys;
    std::vector<Mat2> generators;
    std::vector<std::int32_t> dense;  // key -> index, when small enough
    std::size_t identity = 0;
  };
  explicit MatGroup(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

/// Multiplicative closure. Throws NonInvertibleGenerator, CapExceeded.
MatGroup close_group(const std::vector<Mat2>& generators, const ModulusContext& ctx,
                     std::size_t cap = default_closure_cap());

struct TripleParam {
  int a = 0;  // Z/2
  int b = 0;  // Z/p
  int c = 0;  // Z/p
  bool operator==(const TripleParam&) const = default;
};

/// The level-2 group generated by diag(1,-1), (1+p)I and [[1, mp], [p, 1]]
/// with m a nonsquare mod p, with every element labelled by the unique
/// (a, b, c) such that it equals delta1^a delta2^b delta3^c.
struct ExampleGroup {
  MatGroup group;
  std::int64_t m;
  Mat2 delta1, delta2, delta3;
  std::vector<TripleParam> labels;  // labels[i] belongs to group.element(i)
  std::size_t index_of(const TripleParam& t) const;
};

std::int64_t smallest_nonsquare(std::int64_t p);
/// Closed form [[1+pb, mpc], [(-1)^a pc, (-1)^a (1+pb)]] mod p^2.
Mat2 example_element(const ModulusContext& ctx, std::int64_t m, const TripleParam& t);
/// Throws InvalidInput for p = 2 or a square m.
ExampleGroup make_example_group(std::int64_t p, std::optional<std::int64_t> m = std::nullopt);

MatGroup reduce_mod(const MatGroup& g, int m);

struct SpecialSubgroups {
  MatGroup diagonal;
  MatGroup upper;  // strictly upper triangular [[1, x], [0, 1]]
  MatGroup lower;  // strictly lower triangular [[1, 0], [x, 1]]
};
SpecialSubgroups special_subgroups(const MatGroup& g);

std::vector<MatGroup> cyclic_subgroups(const MatGroup& g);
/// All subgroups by iterated joins of cyclic subgroups, sorted by
/// (order, elements). Throws CapExceeded if |G| > cap.
std::vector<MatGroup> enumerate_subgroups(const MatGroup& g, std::size_t cap = default_closure_cap());

/// Subgroup of g generated by the given elements of g.
MatGroup subgroup_generated(const MatGroup& ambient, const std::vector<Mat2>& generators);

/// { t g t^-1 }. Throws NonInvertibleConjugator.
MatGroup conjugate(const MatGroup& g, const Mat2& t);

enum class Triangular { upper, lower };
struct Triangularizer {
  Mat2 conjugator;
  Triangular kind;
};
/// Exhaustive over GL_2(Z/p^nZ); throws BudgetExceeded when p^n > 25.
std::optional<Triangularizer> find_triangularizing_conjugator(const MatGroup& g);

std::vector<Mat2> invertible_matrices(const ModulusContext& ctx);
MatGroup general_linear_group(const ModulusContext& ctx);
MatGroup full_diagonal_group(const ModulusContext& ctx);
MatGroup full_upper_triangular_group(const ModulusContext& ctx);

}  // namespace cohomlab
