#include "essdim/gf_matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace essdim::gf {

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

Matrix Matrix::identity(FieldPtr field, std::size_t n) {
  Matrix m(std::move(field), n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix Matrix::diagonal(FieldPtr field, const std::vector<Elem> &entries) {
  Matrix m(std::move(field), entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m.at(i, i) = entries[i];
  return m;
}

Matrix Matrix::permutation(FieldPtr field, const std::vector<std::size_t> &perm) {
  Matrix m(std::move(field), perm.size(), perm.size());
  for (std::size_t j = 0; j < perm.size(); ++j) m.at(perm[j], j) = 1;
  return m;
}

Matrix Matrix::operator*(const Matrix &other) const {
  if (cols_ != other.rows_) throw std::invalid_argument("matrix dimension mismatch");
  const Field &f = *field_;
  Matrix out(field_, rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Elem x = at(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) {
        const Elem y = other.at(k, j);
        if (y != 0) out.at(i, j) = f.add(out.at(i, j), f.mul(x, y));
      }
    }
  }
  return out;
}

Matrix Matrix::operator+(const Matrix &other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw std::invalid_argument("matrix dimension mismatch");
  }
  Matrix out(field_, rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = field_->add(a_[i], other.a_[i]);
  return out;
}

bool Matrix::operator==(const Matrix &other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && a_ == other.a_;
}

Matrix Matrix::transpose() const {
  Matrix out(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
  }
  return out;
}

Matrix Matrix::scaled(Elem c) const {
  Matrix out = *this;
  for (Elem &x : out.a_) x = field_->mul(x, c);
  return out;
}

Matrix Matrix::map(const std::function<Elem(Elem)> &fn) const {
  Matrix out = *this;
  for (Elem &x : out.a_) x = fn(x);
  return out;
}

Matrix Matrix::frobenius(unsigned k) const {
  const Field &f = *field_;
  return map([&f, k](Elem x) { return f.frobenius(x, k); });
}

Matrix Matrix::pow(std::int64_t e) const {
  if (!is_square()) throw std::invalid_argument("power of a non-square matrix");
  Matrix base = e < 0 ? inverse() : *this;
  std::uint64_t k = e < 0 ? static_cast<std::uint64_t>(-e) : static_cast<std::uint64_t>(e);
  Matrix acc = identity(field_, rows_);
  while (k) {
    if (k & 1) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

bool Matrix::is_identity() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (at(i, j) != (i == j ? 1u : 0u)) return false;
    }
  }
  return true;
}

Elem Matrix::det() const {
  if (!is_square()) throw std::invalid_argument("determinant of a non-square matrix");
  const Field &f = *field_;
  Matrix m = *this;
  Elem result = 1;
  for (std::size_t c = 0; c < cols_; ++c) {
    std::size_t pivot = c;
    while (pivot < rows_ && m.at(pivot, c) == 0) ++pivot;
    if (pivot == rows_) return 0;
    if (pivot != c) {
      for (std::size_t j = 0; j < cols_; ++j) std::swap(m.at(pivot, j), m.at(c, j));
      result = f.neg(result);
    }
    const Elem pv = m.at(c, c);
    result = f.mul(result, pv);
    const Elem pinv = f.inv(pv);
    for (std::size_t i = c + 1; i < rows_; ++i) {
      const Elem factor = f.mul(m.at(i, c), pinv);
      if (factor == 0) continue;
      for (std::size_t j = c; j < cols_; ++j) {
        m.at(i, j) = f.sub(m.at(i, j), f.mul(factor, m.at(c, j)));
      }
    }
  }
  return result;
}

std::size_t Matrix::rank() const {
  const Field &f = *field_;
  Matrix m = *this;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols_ && rank < rows_; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows_ && m.at(pivot, c) == 0) ++pivot;
    if (pivot == rows_) continue;
    for (std::size_t j = 0; j < cols_; ++j) std::swap(m.at(pivot, j), m.at(rank, j));
    const Elem pinv = f.inv(m.at(rank, c));
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == rank) continue;
      const Elem factor = f.mul(m.at(i, c), pinv);
      if (factor == 0) continue;
      for (std::size_t j = 0; j < cols_; ++j) {
        m.at(i, j) = f.sub(m.at(i, j), f.mul(factor, m.at(rank, j)));
      }
    }
    ++rank;
  }
  return rank;
}

Matrix Matrix::inverse() const {
  if (!is_square()) throw std::invalid_argument("inverse of a non-square matrix");
  const Field &f = *field_;
  const std::size_t n = rows_;
  Matrix m = *this;
  Matrix inv = identity(field_, n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && m.at(pivot, c) == 0) ++pivot;
    if (pivot == n) throw std::domain_error("matrix is singular");
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(m.at(pivot, j), m.at(c, j));
      std::swap(inv.at(pivot, j), inv.at(c, j));
    }
    const Elem pinv = f.inv(m.at(c, c));
    for (std::size_t j = 0; j < n; ++j) {
      m.at(c, j) = f.mul(m.at(c, j), pinv);
      inv.at(c, j) = f.mul(inv.at(c, j), pinv);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c) continue;
      const Elem factor = m.at(i, c);
      if (factor == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        m.at(i, j) = f.sub(m.at(i, j), f.mul(factor, m.at(c, j)));
        inv.at(i, j) = f.sub(inv.at(i, j), f.mul(factor, inv.at(c, j)));
      }
    }
  }
  return inv;
}

std::uint64_t Matrix::order(std::uint64_t bound) const {
  Matrix acc = *this;
  for (std::uint64_t t = 1; t <= bound; ++t) {
    if (acc.is_identity()) return t;
    acc = acc * *this;
  }
  return 0;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix &block) {
  for (std::size_t i = 0; i < block.rows(); ++i) {
    for (std::size_t j = 0; j < block.cols(); ++j) at(r0 + i, c0 + j) = block.at(i, j);
  }
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rows_; ++i) {
    os << "[";
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j);
    os << "]\n";
  }
  return os.str();
}

Matrix companion(FieldPtr field, const std::vector<Elem> &poly) {
  const std::size_t d = poly.size() - 1;
  Matrix c(field, d, d);
  for (std::size_t i = 0; i + 1 < d; ++i) c.at(i + 1, i) = 1;
  for (std::size_t i = 0; i < d; ++i) c.at(i, d - 1) = field->neg(poly[i]);
  return c;
}

Matrix companion_embed(Elem eps, const Embedding &embedding, std::size_t expected_degree) {
  const std::vector<Elem> poly = embedding.minimal_polynomial(eps);
  if (expected_degree != 0 && poly.size() - 1 != expected_degree) {
    throw std::invalid_argument("element has degree " + std::to_string(poly.size() - 1) +
                                ", expected " + std::to_string(expected_degree));
  }
  return companion(embedding.small(), poly);
}

nlohmann::ordered_json matrices_to_json(const std::vector<std::pair<std::string, Matrix>> &named) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  if (!named.empty()) {
    const Field &f = *named.front().second.field();
    j["field"] = {{"p", f.p()}, {"r", f.r()}, {"modulus", f.modulus()}};
  }
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const auto &[name, m] : named) {
    nlohmann::ordered_json entry;
    entry["name"] = name;
    entry["rows"] = m.rows();
    entry["cols"] = m.cols();
    entry["entries"] = m.entries();
    list.push_back(entry);
  }
  j["matrices"] = list;
  return j;
}

}  // namespace essdim::gf
