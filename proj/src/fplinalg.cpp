#include "homgrowth/fplinalg.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "homgrowth/errors.hpp"

namespace homgrowth {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

void require_prime(std::uint64_t p, const char* module) {
  if (!is_prime(p)) throw InputError(module, std::to_string(p) + " is not prime");
  if (p > 65521) throw InputError(module, "prime too large for dense F_p arithmetic");
}

Residue reduce_mod(std::int64_t value, Residue p) {
  const std::int64_t r = value % static_cast<std::int64_t>(p);
  return static_cast<Residue>(r < 0 ? r + p : r);
}

std::uint64_t pow_u64(std::uint64_t base, unsigned exponent) {
  std::uint64_t result = 1;
  while (exponent-- > 0) result *= base;
  return result;
}

Residue inverse_mod(Residue a, Residue p) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p, new_r = a % p;
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) throw InputError("fplinalg", "element not invertible");
  return reduce_mod(t, p);
}

MatrixFp::MatrixFp(Residue p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

MatrixFp MatrixFp::identity(Residue p, std::size_t n) {
  MatrixFp m(p, n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1 % p;
  return m;
}

MatrixFp MatrixFp::from_rows(Residue p, std::size_t cols, const std::vector<std::vector<std::int64_t>>& rows) {
  MatrixFp m(p, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw InputError("fplinalg", "ragged row in from_rows");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

MatrixFp MatrixFp::from_vectors(Residue p, std::size_t cols, const std::vector<VectorFp>& rows) {
  MatrixFp m(p, 0, cols);
  for (const auto& r : rows) m.append_row(r);
  return m;
}

void MatrixFp::add(std::size_t r, std::size_t c, std::int64_t value) {
  auto& slot = data_[r * cols_ + c];
  slot = static_cast<Residue>((slot + reduce_mod(value, p_)) % p_);
}

VectorFp MatrixFp::row_vector(std::size_t r) const {
  auto s = row(r);
  return {s.begin(), s.end()};
}

void MatrixFp::append_row(std::span<const Residue> values) {
  if (values.size() != cols_) throw InputError("fplinalg", "append_row: dimension mismatch");
  for (Residue v : values) data_.push_back(v % p_);
  ++rows_;
}

MatrixFp MatrixFp::transpose() const {
  MatrixFp t(p_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = data_[r * cols_ + c];
  return t;
}

VectorFp MatrixFp::apply(std::span<const Residue> v) const {
  if (v.size() != cols_) throw InputError("fplinalg", "apply: dimension mismatch");
  VectorFp out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) acc = (acc + std::uint64_t{data_[r * cols_ + c]} * v[c]) % p_;
    out[r] = static_cast<Residue>(acc);
  }
  return out;
}

VectorFp MatrixFp::apply_transpose(std::span<const Residue> v) const {
  if (v.size() != rows_) throw InputError("fplinalg", "apply_transpose: dimension mismatch");
  std::vector<std::uint64_t> acc(cols_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    if (v[r] == 0) continue;
    for (std::size_t c = 0; c < cols_; ++c) acc[c] = (acc[c] + std::uint64_t{data_[r * cols_ + c]} * v[r]) % p_;
  }
  return {acc.begin(), acc.end()};
}

MatrixFp MatrixFp::multiply(const MatrixFp& other) const {
  if (cols_ != other.rows_ || p_ != other.p_) throw InputError("fplinalg", "multiply: dimension mismatch");
  MatrixFp out(p_, rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const std::uint64_t a = data_[r * cols_ + k];
      if (a == 0) continue;
      for (std::size_t c = 0; c < other.cols_; ++c) {
        auto& slot = out.data_[r * other.cols_ + c];
        slot = static_cast<Residue>((slot + a * other.data_[k * other.cols_ + c]) % p_);
      }
    }
  return out;
}

bool MatrixFp::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Residue v) { return v == 0; });
}

Echelon row_reduce(const MatrixFp& m) {
  Echelon e{m, {}};
  MatrixFp& a = e.reduced;
  const Residue p = a.p();
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < a.cols() && pivot_row < a.rows(); ++col) {
    std::size_t found = a.rows();
    for (std::size_t r = pivot_row; r < a.rows(); ++r)
      if (a.at(r, col) != 0) {
        found = r;
        break;
      }
    if (found == a.rows()) continue;
    if (found != pivot_row) std::swap_ranges(a.row(found).begin(), a.row(found).end(), a.row(pivot_row).begin());
    const std::uint64_t inv = inverse_mod(a.at(pivot_row, col), p);
    for (auto& x : a.row(pivot_row)) x = static_cast<Residue>(x * inv % p);
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == pivot_row) continue;
      const std::uint64_t factor = a.at(r, col);
      if (factor == 0) continue;
      auto target = a.row(r);
      auto source = a.row(pivot_row);
      for (std::size_t c = col; c < a.cols(); ++c)
        target[c] = static_cast<Residue>((target[c] + (p - factor) * source[c]) % p);
    }
    e.pivot_cols.push_back(col);
    ++pivot_row;
  }
  return e;
}

std::size_t rank(const MatrixFp& m) { return row_reduce(m).rank(); }

std::vector<VectorFp> kernel_basis(const MatrixFp& m) {
  const Echelon e = row_reduce(m);
  const Residue p = m.p();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  std::vector<VectorFp> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    VectorFp v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) {
      const Residue entry = e.reduced.at(i, free);
      v[e.pivot_cols[i]] = entry == 0 ? 0 : p - entry;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<VectorFp> row_space_basis(const MatrixFp& m) {
  const Echelon e = row_reduce(m);
  std::vector<VectorFp> basis;
  for (std::size_t i = 0; i < e.rank(); ++i) basis.push_back(e.reduced.row_vector(i));
  return basis;
}

std::optional<VectorFp> solve_in_span(const MatrixFp& m, std::span<const Residue> target) {
  if (target.size() != m.cols()) throw InputError("fplinalg", "solve_in_span: target length must equal cols");
  // Solve mᵀ x = target via elimination on the augmented matrix [mᵀ | target].
  const Residue p = m.p();
  MatrixFp aug(p, m.cols(), m.rows() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) aug.set(c, r, m.at(r, c));
  for (std::size_t c = 0; c < m.cols(); ++c) aug.set(c, m.rows(), target[c]);
  const Echelon e = row_reduce(aug);
  if (!e.pivot_cols.empty() && e.pivot_cols.back() == m.rows()) return std::nullopt;
  VectorFp x(m.rows(), 0);
  for (std::size_t i = 0; i < e.rank(); ++i) x[e.pivot_cols[i]] = e.reduced.at(i, m.rows());
  return x;
}

VectorFp SpanBuilder::reduce(std::span<const Residue> v) const {
  VectorFp w(v.begin(), v.end());
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const Residue f = w[pivots_[i]];
    if (f != 0) w = add_scaled(w, basis_[i], p_ - f, p_);
  }
  return w;
}

bool SpanBuilder::add(std::span<const Residue> v) {
  if (v.size() != dim_) throw InputError("fplinalg", "SpanBuilder: dimension mismatch");
  VectorFp w = reduce(v);
  auto it = std::find_if(w.begin(), w.end(), [](Residue x) { return x != 0; });
  if (it == w.end()) return false;
  const std::size_t pivot = static_cast<std::size_t>(it - w.begin());
  const std::uint64_t inv = inverse_mod(*it, p_);
  for (auto& x : w) x = static_cast<Residue>(x * inv % p_);
  // Keep the stored basis fully reduced on its pivot columns.
  for (auto& b : basis_) {
    const Residue f = b[pivot];
    if (f != 0) b = add_scaled(b, w, p_ - f, p_);
  }
  basis_.push_back(std::move(w));
  pivots_.push_back(pivot);
  return true;
}

bool SpanBuilder::contains(std::span<const Residue> v) const {
  const VectorFp w = reduce(v);
  return std::all_of(w.begin(), w.end(), [](Residue x) { return x == 0; });
}

VectorFp add_scaled(std::span<const Residue> a, std::span<const Residue> b, Residue scale, Residue p) {
  VectorFp out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    out[i] = static_cast<Residue>((a[i] + std::uint64_t{scale} * b[i]) % p);
  return out;
}

std::size_t hamming_weight(std::span<const Residue> v) {
  return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](Residue x) { return x != 0; }));
}

}  // namespace homgrowth
