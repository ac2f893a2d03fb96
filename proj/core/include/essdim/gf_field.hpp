#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace essdim::gf {

// Field elements are encoded as integers: the coefficient vector of the
// polynomial representative read in base p (constant term least significant).
using Elem = std::uint32_t;

class Field {
 public:
  // Fields larger than this are rejected; arithmetic is table driven.
  static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 22;

  Field(std::uint64_t p, unsigned r);

  std::uint64_t p() const { return p_; }
  unsigned r() const { return r_; }
  std::uint64_t q() const { return q_; }
  // Monic modulus, coefficients from the constant term upwards (length r + 1).
  const std::vector<std::uint64_t> &modulus() const { return modulus_; }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    std::uint64_t k = static_cast<std::uint64_t>(log_[a]) + log_[b];
    if (k >= q_ - 1) k -= q_ - 1;
    return exp_[k];
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::int64_t e) const;

  // Least multiplicative generator under the integer encoding.
  Elem generator() const { return exp_.size() > 1 ? exp_[1] : 1; }
  std::uint64_t log(Elem a) const;
  Elem exp(std::uint64_t k) const { return exp_[k % (q_ - 1)]; }

  std::uint64_t element_order(Elem a) const;
  // x -> x^{p^k}
  Elem frobenius(Elem a, unsigned k) const;
  bool is_square(Elem a) const;
  // Least non-square (p odd).
  Elem least_nonsquare() const;

  Elem from_int(std::int64_t v) const;
  std::vector<std::uint64_t> coefficients(Elem a) const;
  std::string to_string(Elem a) const;

 private:
  std::uint64_t p_;
  unsigned r_;
  std::uint64_t q_;
  std::vector<std::uint64_t> modulus_;
  std::vector<Elem> exp_;
  std::vector<Elem> log_;
  std::vector<Elem> neg_;
  std::vector<Elem> add_table_;  // filled for small fields
};

using FieldPtr = std::shared_ptr<const Field>;

// Deterministic F_{p^r}: the modulus is the least monic irreducible when
// the lower coefficients are read as a base-p integer. Instances are cached.
FieldPtr make_field(std::uint64_t p, unsigned r);

// Exhaustive irreducibility test over F_p (used to cross-check the modulus).
bool is_irreducible(const std::vector<std::uint64_t> &poly, std::uint64_t p);

// g^{(q-1)/order} for the least generator g.
Elem root_of_unity(const Field &field, std::uint64_t order);

// Embedding of F_{p^a} into F_{p^b} (a | b) sending x to the least root of
// the small modulus.
class Embedding {
 public:
  Embedding(FieldPtr small, FieldPtr big);

  const FieldPtr &small() const { return small_; }
  const FieldPtr &big() const { return big_; }
  Elem to_big(Elem a) const { return to_big_[a]; }
  bool in_subfield(Elem a) const;
  Elem to_small(Elem a) const;
  // Tr_{big/small}
  Elem trace(Elem a) const;
  // Monic minimal polynomial over the small field, constant term first.
  std::vector<Elem> minimal_polynomial(Elem a) const;

 private:
  FieldPtr small_;
  FieldPtr big_;
  std::vector<Elem> to_big_;
  std::uint64_t index_ = 1;   // (Q-1)/(q-1)
  std::uint64_t gen_inverse_ = 1;  // inverse of log(to_big(g))/index mod q-1
};

}  // namespace essdim::gf
