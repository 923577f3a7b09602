#include "indmatch/matrix.hpp"

#include "indmatch/error.hpp"

#include <sstream>

namespace indmatch {

bool is_prime(std::uint32_t n) noexcept {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p >= 65536 || !is_prime(p)) {
    throw ValidationError("field characteristic must be a prime below 65536, got " + std::to_string(p));
  }
}

std::uint32_t PrimeField::reduce(std::int64_t x) const noexcept {
  const std::int64_t r = x % static_cast<std::int64_t>(p_);
  return static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
  if (a % p_ == 0) throw DomainError("zero has no inverse");
  // Fermat: a^(p-2)
  std::uint64_t result = 1;
  std::uint64_t base = a % p_;
  std::uint32_t e = p_ - 2;
  while (e > 0) {
    if (e & 1U) result = result * base % p_;
    base = base * base % p_;
    e >>= 1U;
  }
  return static_cast<std::uint32_t>(result);
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::uint32_t p)
    : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {}

Matrix Matrix::identity(std::size_t n, std::uint32_t p) {
  Matrix m(n, n, p);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows, std::size_t cols,
                         std::uint32_t p) {
  const PrimeField field(p);
  Matrix m(rows.size(), cols, p);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw ValidationError("matrix row " + std::to_string(r) + " has " +
                                std::to_string(rows[r].size()) + " entries, expected " +
                                std::to_string(cols),
                            r);
    }
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = field.reduce(rows[r][c]);
  }
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows, std::uint32_t p) {
  return from_rows(rows, rows.empty() ? 0 : rows.front().size(), p);
}

bool Matrix::is_zero() const noexcept {
  for (auto v : data_) {
    if (v != 0) return false;
  }
  return true;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_, p_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

Matrix Matrix::column_block(std::size_t first, std::size_t count) const {
  Matrix out(rows_, count, p_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < count; ++c) out(r, c) = (*this)(r, first + c);
  }
  return out;
}

Matrix Matrix::row_block(std::size_t first, std::size_t count) const {
  Matrix out(count, cols_, p_);
  for (std::size_t r = 0; r < count; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(r, c) = (*this)(first + r, c);
  }
  return out;
}

std::vector<std::vector<std::int64_t>> Matrix::to_rows() const {
  std::vector<std::vector<std::int64_t>> out(rows_, std::vector<std::int64_t>(cols_));
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out[r][c] = (*this)(r, c);
  }
  return out;
}

std::string Matrix::to_string() const {
  std::ostringstream out;
  out << rows_ << "x" << cols_ << " [";
  for (std::size_t r = 0; r < rows_; ++r) {
    out << (r ? "; " : "");
    for (std::size_t c = 0; c < cols_; ++c) out << (c ? " " : "") << (*this)(r, c);
  }
  out << "]";
  return out.str();
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_ || a.p_ != b.p_) {
    throw DomainError("matrix product shape mismatch: " + std::to_string(a.rows_) + "x" +
                      std::to_string(a.cols_) + " * " + std::to_string(b.rows_) + "x" +
                      std::to_string(b.cols_));
  }
  Matrix out(a.rows_, b.cols_, a.p_);
  const std::uint64_t p = a.p_;
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const std::uint64_t aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        out(i, j) = static_cast<std::uint32_t>((out(i, j) + aik * b(k, j)) % p);
      }
    }
  }
  return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.p_ != b.p_) {
    throw DomainError("matrix sum shape mismatch");
  }
  Matrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] = (a.data_[i] + b.data_[i]) % a.p_;
  return out;
}

Matrix block_diagonal(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() + b.rows(), a.cols() + b.cols(), a.characteristic());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
  }
  for (std::size_t r = 0; r < b.rows(); ++r) {
    for (std::size_t c = 0; c < b.cols(); ++c) out(a.rows() + r, a.cols() + c) = b(r, c);
  }
  return out;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw DomainError("hstack row mismatch");
  Matrix out(a.rows(), a.cols() + b.cols(), a.characteristic());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
    for (std::size_t c = 0; c < b.cols(); ++c) out(r, a.cols() + c) = b(r, c);
  }
  return out;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  return hstack(a.transpose(), b.transpose()).transpose();
}

EchelonForm row_reduce(const Matrix& a) {
  const PrimeField f = a.field();
  EchelonForm out{a, {}};
  Matrix& m = out.reduced;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows() && m(pivot, col) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(row, c), m(pivot, c));
    }
    const std::uint32_t scale = f.inv(m(row, col));
    for (std::size_t c = 0; c < m.cols(); ++c) m(row, c) = f.mul(m(row, c), scale);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      const std::uint32_t factor = m(r, col);
      for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = f.sub(m(r, c), f.mul(factor, m(row, c)));
    }
    out.pivot_columns.push_back(col);
    ++row;
  }
  return out;
}

std::size_t rank(const Matrix& a) { return row_reduce(a).pivot_columns.size(); }

Matrix kernel_basis(const Matrix& a) {
  const PrimeField f = a.field();
  const auto ech = row_reduce(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : ech.pivot_columns) is_pivot[c] = true;
  Matrix basis(a.cols(), a.cols() - ech.pivot_columns.size(), a.characteristic());
  std::size_t k = 0;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    basis(free, k) = 1;
    for (std::size_t i = 0; i < ech.pivot_columns.size(); ++i) {
      basis(ech.pivot_columns[i], k) = f.neg(ech.reduced(i, free));
    }
    ++k;
  }
  return basis;
}

Matrix image_basis(const Matrix& a) {
  const auto ech = row_reduce(a);
  Matrix basis(a.rows(), ech.pivot_columns.size(), a.characteristic());
  for (std::size_t k = 0; k < ech.pivot_columns.size(); ++k) {
    for (std::size_t r = 0; r < a.rows(); ++r) basis(r, k) = a(r, ech.pivot_columns[k]);
  }
  return basis;
}

std::optional<Matrix> solve_factor(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw DomainError("solve_factor: row counts differ");
  const auto ech = row_reduce(hstack(a, b));
  const std::size_t n = a.cols();
  std::size_t rank_a = 0;
  for (auto c : ech.pivot_columns) {
    if (c >= n) return std::nullopt;  // a pivot in the augmented part: inconsistent
    ++rank_a;
  }
  Matrix x(n, b.cols(), a.characteristic());
  for (std::size_t i = 0; i < rank_a; ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) x(ech.pivot_columns[i], j) = ech.reduced(i, n + j);
  }
  return x;
}

Matrix inverse(const Matrix& a) {
  if (a.rows() != a.cols()) throw DomainError("inverse of a non-square matrix");
  auto x = solve_factor(a, Matrix::identity(a.rows(), a.characteristic()));
  if (!x || rank(a) != a.rows()) throw DomainError("matrix is singular");
  return *x;
}

Matrix complement_basis(const Matrix& basis) {
  const std::size_t n = basis.rows();
  Matrix current = basis;
  std::size_t current_rank = rank(basis);
  std::vector<std::size_t> added;
  for (std::size_t e = 0; e < n && current_rank < n; ++e) {
    Matrix unit(n, 1, basis.characteristic());
    unit(e, 0) = 1;
    Matrix candidate = hstack(current, unit);
    const std::size_t r = rank(candidate);
    if (r > current_rank) {
      current = std::move(candidate);
      current_rank = r;
      added.push_back(e);
    }
  }
  Matrix out(n, added.size(), basis.characteristic());
  for (std::size_t k = 0; k < added.size(); ++k) out(added[k], k) = 1;
  return out;
}

}  // namespace indmatch
