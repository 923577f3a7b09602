#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace indmatch {

/// Residue arithmetic modulo a prime p < 2^16.
class PrimeField {
 public:
  /// Throws ValidationError unless p is a prime below 65536.
  explicit PrimeField(std::uint32_t p);

  std::uint32_t characteristic() const noexcept { return p_; }
  std::uint32_t reduce(std::int64_t x) const noexcept;
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept { return (a + b) % p_; }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept { return (a + p_ - b) % p_; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p_);
  }
  std::uint32_t neg(std::uint32_t a) const noexcept { return a == 0 ? 0 : p_ - a; }
  /// Throws DomainError for zero.
  std::uint32_t inv(std::uint32_t a) const;

 private:
  std::uint32_t p_;
};

bool is_prime(std::uint32_t n) noexcept;

/// Dense row-major matrix over GF(p). Zero-row and zero-column shapes are allowed.
class Matrix {
 public:
  Matrix() : Matrix(0, 0, 2) {}
  Matrix(std::size_t rows, std::size_t cols, std::uint32_t p);

  static Matrix identity(std::size_t n, std::uint32_t p);
  /// Entries are reduced mod p. All rows must have `cols` entries.
  static Matrix from_rows(const std::vector<std::vector<std::int64_t>>& rows, std::size_t cols,
                          std::uint32_t p);
  static Matrix from_rows(const std::vector<std::vector<std::int64_t>>& rows, std::uint32_t p);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::uint32_t characteristic() const noexcept { return p_; }
  PrimeField field() const { return PrimeField(p_); }

  std::uint32_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::uint32_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  bool is_zero() const noexcept;
  Matrix transpose() const;
  /// Columns [first, first+count).
  Matrix column_block(std::size_t first, std::size_t count) const;
  Matrix row_block(std::size_t first, std::size_t count) const;
  std::vector<std::vector<std::int64_t>> to_rows() const;
  std::string to_string() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::uint32_t p_;
  std::vector<std::uint32_t> data_;
};

Matrix block_diagonal(const Matrix& a, const Matrix& b);
Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);

/// Reduced row echelon form with smallest-row-index pivoting.
struct EchelonForm {
  Matrix reduced;
  std::vector<std::size_t> pivot_columns;
};
EchelonForm row_reduce(const Matrix& a);

std::size_t rank(const Matrix& a);
/// Columns form a basis of the null space (free variables set to unit vectors).
Matrix kernel_basis(const Matrix& a);
/// The pivot columns of `a`: a basis of its column space.
Matrix image_basis(const Matrix& a);
/// Some X with A X = B (free variables zero), or nullopt if col(B) ⊄ col(A).
std::optional<Matrix> solve_factor(const Matrix& a, const Matrix& b);
/// Throws DomainError if `a` is singular or not square.
Matrix inverse(const Matrix& a);
/// Extends independent columns `basis` by standard basis vectors (lowest index
/// first) to a basis of the ambient space; returns only the added columns.
Matrix complement_basis(const Matrix& basis);

}  // namespace indmatch
