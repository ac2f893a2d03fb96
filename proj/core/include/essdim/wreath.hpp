#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "essdim/perm.hpp"

namespace essdim {

enum class WreathVariant { GL, SL, PSLCase1, PSLCase2 };

std::string to_string(WreathVariant v);

// An element (v, tau): v is the torus exponent vector (coordinate i is the
// exponent of the i-th diagonal or block generator), tau a permutation of
// the coordinates.
struct WreathElement {
  std::vector<std::uint32_t> v;
  Perm tau;

  bool operator==(const WreathElement &o) const { return v == o.v && tau == o.tau; }
};

struct CenterInfo {
  std::vector<std::uint64_t> elements;  // element ids
  std::uint64_t order = 0;
  unsigned rank = 0;                   // log_l of the order-l subgroup
  std::vector<unsigned> invariants;    // exponents of the cyclic factors, descending
};

// (Z/l^s)^m ⋊ P_l(S_m) and its SL/PSL relatives.
//
//  GL        torus (Z/l^s)^m
//  SL        sum-zero vectors of (Z/l^s)^n; the i-th SL generator is
//            e_i - e_{i+1} and e_n - e_1 is the product of the others' inverses
//  PSL       SL modulo the scalars l^{s-c}(1,...,1) with c = min(s, t):
//            case 1 (s <= t) leaves n-2 coordinates, case 2 (s > t) leaves
//            (Z/l^s)^{n-2} x Z/l^{s-t}
//
// The permutation part acts by tau(v)_i = v_{tau^{-1}(i)}. Vectors are kept in
// canonical form (entries mod l^s; in quotients the last entry is reduced
// below l^{s-c}), so element equality is bytewise. Elements are indexed by
// id = torus_index * |L| + permutation_index.
class WreathGroup {
 public:
  WreathGroup(std::uint64_t l, unsigned s, std::size_t m, WreathVariant variant, unsigned t);

  std::uint64_t l() const { return l_; }
  unsigned s() const { return s_; }
  std::size_t m() const { return m_; }
  WreathVariant variant() const { return variant_; }
  unsigned t() const { return t_; }
  // Exponent c of the scalar quotient (0 for GL and SL).
  unsigned scalar_exponent() const { return c_; }
  std::uint64_t modulus() const { return mod_; }
  bool sum_zero() const { return variant_ != WreathVariant::GL; }

  const std::vector<Perm> &top() const { return top_; }
  const std::vector<Perm> &top_generators() const { return top_gens_; }
  std::size_t top_index(const Perm &p) const;
  std::size_t top_mul(std::size_t a, std::size_t b) const { return top_mul_[a * top_.size() + b]; }
  std::size_t top_inv(std::size_t a) const { return top_inv_[a]; }

  std::uint64_t torus_size() const { return torus_size_; }
  std::uint64_t order() const { return torus_size_ * top_.size(); }

  std::vector<std::uint32_t> canonical(std::vector<std::uint32_t> v) const;
  std::uint64_t torus_index(const std::vector<std::uint32_t> &v) const;
  std::vector<std::uint32_t> torus_vector(std::uint64_t index) const;
  std::vector<std::uint32_t> act(std::size_t tau, const std::vector<std::uint32_t> &v) const;

  std::uint64_t id(const WreathElement &g) const;
  WreathElement element(std::uint64_t id) const;
  WreathElement identity() const;
  WreathElement multiply(const WreathElement &g, const WreathElement &h) const;
  WreathElement inverse(const WreathElement &g) const;
  WreathElement power(const WreathElement &g, std::uint64_t e) const;
  std::uint64_t multiply(std::uint64_t g, std::uint64_t h) const;
  std::uint64_t inverse(std::uint64_t g) const;

  // Torus generators (unit vectors, or e_i - e_{i+1} for the sum-zero
  // variants) followed by the P_l(S_m) generators.
  std::vector<WreathElement> generators() const;

  // Reduced coordinates: v itself for GL, prefix sums b_i = v_1 + ... + v_i
  // (i < n) for the SL family, i.e. exponents of the e_i - e_{i+1}.
  std::vector<std::uint32_t> coordinates(const WreathElement &g) const;

  nlohmann::ordered_json to_json(const WreathElement &g) const;

 private:
  std::uint64_t l_;
  unsigned s_;
  std::size_t m_;
  WreathVariant variant_;
  unsigned t_;
  unsigned c_ = 0;
  std::uint64_t mod_;
  std::uint64_t last_mod_;  // range of the last free coordinate
  std::uint64_t torus_size_ = 1;
  std::vector<Perm> top_;
  std::vector<Perm> top_gens_;
  std::vector<std::size_t> top_mul_;
  std::vector<std::size_t> top_inv_;
};

// Validates variant consistency: PSL variants need l | m and the case
// condition on s against t (t defaults to nu_l(m); pass nu_l(n') for the
// SL/mu_n' quotients).
WreathGroup make_group(std::uint64_t l, unsigned s, std::size_t m, WreathVariant variant,
                       int t = -1);

constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 20;

// Exhaustive center by testing commutation with every generator.
CenterInfo center(const WreathGroup &group, std::uint64_t budget = kDefaultBudget);

// Central elements of order dividing l.
std::vector<std::uint64_t> socle(const WreathGroup &group, const CenterInfo &center);
std::vector<std::uint64_t> socle(const WreathGroup &group, std::uint64_t budget = kDefaultBudget);

// Rank of the center predicted from the digit sum (digit sum of m, minus
// one for the SL family).
unsigned predicted_center_rank(const WreathGroup &group);

bool is_abelian(const WreathGroup &group);

nlohmann::ordered_json center_to_json(const WreathGroup &group, const CenterInfo &center);

}  // namespace essdim
