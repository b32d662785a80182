#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace homgrowth {

using Residue = std::uint32_t;
using VectorFp = std::vector<Residue>;

/// Trial-division primality test; primes in this library are desk-scale.
bool is_prime(std::uint64_t n);

/// Throws InputError unless `p` is prime.
void require_prime(std::uint64_t p, const char* module);

Residue reduce_mod(std::int64_t value, Residue p);
Residue inverse_mod(Residue a, Residue p);
std::uint64_t pow_u64(std::uint64_t base, unsigned exponent);

/// Dense row-major matrix over F_p with entries kept in [0, p).
class MatrixFp {
 public:
  MatrixFp() = default;
  MatrixFp(Residue p, std::size_t rows, std::size_t cols);

  static MatrixFp identity(Residue p, std::size_t n);
  /// Builds from integer rows, reducing every entry mod p. All rows must have
  /// `cols` entries.
  static MatrixFp from_rows(Residue p, std::size_t cols, const std::vector<std::vector<std::int64_t>>& rows);
  static MatrixFp from_vectors(Residue p, std::size_t cols, const std::vector<VectorFp>& rows);

  Residue p() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Residue at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, std::int64_t value) { data_[r * cols_ + c] = reduce_mod(value, p_); }
  void add(std::size_t r, std::size_t c, std::int64_t value);

  std::span<const Residue> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<Residue> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  VectorFp row_vector(std::size_t r) const;

  void append_row(std::span<const Residue> values);

  MatrixFp transpose() const;
  /// m · v, with v of length cols().
  VectorFp apply(std::span<const Residue> v) const;
  /// vᵀ · m, with v of length rows().
  VectorFp apply_transpose(std::span<const Residue> v) const;
  MatrixFp multiply(const MatrixFp& other) const;

  bool is_zero() const;
  friend bool operator==(const MatrixFp&, const MatrixFp&) = default;

 private:
  Residue p_ = 2;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Residue> data_;
};

/// Reduced row echelon form plus the pivot column of each nonzero row.
struct Echelon {
  MatrixFp reduced;
  std::vector<std::size_t> pivot_cols;
  std::size_t rank() const { return pivot_cols.size(); }
};

/// Gauss-Jordan elimination. Pivots are taken column by column from the left,
/// using the first remaining row (top to bottom) with a nonzero entry, so the
/// result is a pure function of the input.
Echelon row_reduce(const MatrixFp& m);

std::size_t rank(const MatrixFp& m);

/// Basis of {v : m·v = 0}; one vector per free column of the echelon form.
std::vector<VectorFp> kernel_basis(const MatrixFp& m);

/// Nonzero rows of the reduced echelon form of m.
std::vector<VectorFp> row_space_basis(const MatrixFp& m);

/// Coefficients x with mᵀ·x = target (target is a combination of the rows of
/// m), or nullopt when target lies outside the row space.
std::optional<VectorFp> solve_in_span(const MatrixFp& m, std::span<const Residue> target);

/// Incremental span membership: keeps a reduced basis and reports whether a
/// vector was new.
class SpanBuilder {
 public:
  SpanBuilder(Residue p, std::size_t dim) : p_(p), dim_(dim) {}
  /// Adds v; returns true if it increased the dimension.
  bool add(std::span<const Residue> v);
  bool contains(std::span<const Residue> v) const;
  std::size_t dimension() const { return basis_.size(); }
  std::size_t ambient_dimension() const { return dim_; }

 private:
  VectorFp reduce(std::span<const Residue> v) const;
  Residue p_;
  std::size_t dim_;
  std::vector<VectorFp> basis_;
  std::vector<std::size_t> pivots_;
};

VectorFp add_scaled(std::span<const Residue> a, std::span<const Residue> b, Residue scale, Residue p);
std::size_t hamming_weight(std::span<const Residue> v);

}  // namespace homgrowth
