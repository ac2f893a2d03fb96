#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "essdim/gf_field.hpp"

namespace essdim::gf {

// Dense matrix over a finite field, row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols);

  static Matrix identity(FieldPtr field, std::size_t n);
  static Matrix diagonal(FieldPtr field, const std::vector<Elem> &entries);
  // Column j holds e_{perm[j]}: the matrix sends e_j to e_{perm[j]}.
  static Matrix permutation(FieldPtr field, const std::vector<std::size_t> &perm);

  const FieldPtr &field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Elem at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  Elem &at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const std::vector<Elem> &entries() const { return a_; }

  Matrix operator*(const Matrix &other) const;
  Matrix operator+(const Matrix &other) const;
  bool operator==(const Matrix &other) const;
  bool operator!=(const Matrix &other) const { return !(*this == other); }

  Matrix transpose() const;
  Matrix scaled(Elem c) const;
  Matrix map(const std::function<Elem(Elem)> &fn) const;
  // Entrywise x -> x^{p^k}
  Matrix frobenius(unsigned k) const;
  Matrix pow(std::int64_t e) const;

  bool is_square() const { return rows_ == cols_; }
  bool is_identity() const;
  Elem det() const;
  std::size_t rank() const;
  // Throws std::domain_error when singular.
  Matrix inverse() const;
  // Least t >= 1 with M^t = I, searching up to the bound; 0 if not found.
  std::uint64_t order(std::uint64_t bound) const;

  // Copies a block into position (r0, c0).
  void set_block(std::size_t r0, std::size_t c0, const Matrix &block);

  std::string to_string() const;

 private:
  FieldPtr field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> a_;
};

using GFMatrix = Matrix;

// Multiplication-by-eps on the extension containing eps, as a matrix over the
// small field of the embedding in the power basis 1, eps, eps^2, ...
// If expected_degree is nonzero the minimal polynomial must have that degree.
Matrix companion_embed(Elem eps, const Embedding &embedding, std::size_t expected_degree = 0);

// Companion matrix of a monic polynomial (constant term first).
Matrix companion(FieldPtr field, const std::vector<Elem> &poly);

// Versioned dump: field modulus plus row-major entries.
nlohmann::ordered_json matrices_to_json(const std::vector<std::pair<std::string, Matrix>> &named);

}  // namespace essdim::gf
