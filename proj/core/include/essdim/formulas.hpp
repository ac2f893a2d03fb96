#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "essdim/family.hpp"

namespace essdim {

struct EdResult {
  std::uint64_t value = 0;
  std::string case_label;
  std::vector<std::string> assumptions;
  std::vector<std::string> warnings;

  nlohmann::ordered_json to_json() const;
};

// Field assumptions under which the closed forms apply. Throws
// UnsupportedCase (DefiningPrime for l = p) for uncovered tuples and
// std::invalid_argument for malformed ones. For Sp families n is the
// matrix dimension; for unitary families q = p^r and the group lives
// over F_{q^2}.
std::vector<std::string> validate(const Family &family, std::uint64_t n, std::uint64_t p,
                                  unsigned r, std::uint64_t l);

EdResult ed_gl(std::uint64_t n, std::uint64_t p, unsigned r, std::uint64_t l);
EdResult ed_sl(std::uint64_t n, std::uint64_t p, unsigned r, std::uint64_t l);
EdResult ed_psl(std::uint64_t n, std::uint64_t p, unsigned r, std::uint64_t l);
EdResult ed_sl_quotient(std::uint64_t n, std::uint64_t nprime, std::uint64_t p, unsigned r,
                        std::uint64_t l);
// Sp(2 n_half, q) and PSp(2 n_half, q).
EdResult ed_symplectic(std::uint64_t n_half, std::uint64_t p, unsigned r, std::uint64_t l,
                       bool projective = false);
EdResult ed_orthogonal(std::uint64_t n, Epsilon eps, std::uint64_t p, unsigned r,
                       std::uint64_t l, bool projective = false);
EdResult ed_unitary(std::uint64_t n, UnitaryVariant variant, std::uint64_t p, unsigned r,
                    std::uint64_t l);
EdResult ed_unitary_l2(std::uint64_t n, UnitaryVariant variant, std::uint64_t p, unsigned r);

EdResult essential_dimension(const Family &family, std::uint64_t n, std::uint64_t p, unsigned r,
                             std::uint64_t l);

// The literal digit sum sum_k digit(m,l,k) l^k, kept separate from m itself.
std::uint64_t gl_digit_sum(std::uint64_t m, std::uint64_t l);

// True when the formula subtracts l^{mu'(n)} and n is a positive power of l,
// so the value collapses to 0 on a nontrivial Sylow subgroup.
bool is_lpower_edge(const Family &family, std::uint64_t n, std::uint64_t p, unsigned r,
                    std::uint64_t l);

// How a family reduces to a linear group at l.
struct Reduction {
  enum class Kind { Trivial, GL, SL, PSL, Unitary2 };
  Kind kind = Kind::Trivial;
  std::uint64_t n = 0;  // rank of the linear group
  std::uint64_t p = 0;
  unsigned r = 0;         // the linear group lives over F_{p^r}
  std::uint64_t nprime = 1;  // order-l part of the scalar quotient comes from n'
  bool subtract = false;     // value is the digit sum minus l^{mu'(n)}
  std::string label;
};

Reduction reduce(const Family &family, std::uint64_t n, std::uint64_t p, unsigned r,
                 std::uint64_t l);

// Rank of the center of the Sylow subgroup as predicted by the digit sums.
std::uint64_t predicted_center_rank(const Family &family, std::uint64_t n, std::uint64_t p,
                                    unsigned r, std::uint64_t l);

}  // namespace essdim
