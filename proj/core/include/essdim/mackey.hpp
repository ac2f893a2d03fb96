#pragma once

#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

#include "essdim/wreath.hpp"

namespace essdim {

// psi_b(v) = psi(b . v) with psi a fixed generator of the dual of Z/l^s,
// realized as the integer b . v mod l^s.
//
// For the GL variant b runs over (Z/l^s)^m. For the sum-zero variants the
// base is a subgroup of (Z/l^s)^n, so b is taken modulo (1,...,1) and kept
// with b_n = 0; in the PSL quotients b must also kill the scalars
// l^{s-c}(1,...,1), i.e. l^c divides b_1 + ... + b_n.
//
// lambda is empty for the trivial character of L_b. It is only filled in
// when the whole group is abelian; then it lists values in Z/lambda_modulus
// indexed by the permutation index of L.
struct CharacterVector {
  std::vector<std::uint32_t> b;
  std::vector<std::uint32_t> lambda;
  std::uint64_t lambda_modulus = 1;

  bool operator==(const CharacterVector &o) const {
    return b == o.b && lambda == o.lambda && lambda_modulus == o.lambda_modulus;
  }
};

// theta_{b,lambda} = Ind_{Delta L_b}^{G}(psi_b x lambda).
struct MonomialRep {
  CharacterVector b;
  std::uint64_t dim = 1;
  std::uint64_t kernel_size = 0;  // filled by certification
};

// Characters of the base, in the canonical form described above.
std::vector<std::uint32_t> canonical_character(const WreathGroup &group,
                                               std::vector<std::uint32_t> b);
std::uint64_t character_count(const WreathGroup &group);
CharacterVector character_at(const WreathGroup &group, std::uint64_t index);
// b . v mod l^s.
std::uint64_t pairing(const WreathGroup &group, const std::vector<std::uint32_t> &b,
                      const std::vector<std::uint32_t> &v);
// (tau b)_i = b_{tau^{-1}(i)}; psi_{tau b}(v) = psi_b(tau^{-1} v).
std::vector<std::uint32_t> act_character(const WreathGroup &group, std::size_t tau,
                                         const std::vector<std::uint32_t> &b);

// Indices (into group.top()) of L_b = {tau : tau b = b}.
std::vector<std::size_t> stabilizer(const CharacterVector &b, const WreathGroup &group);
// |L| / |L_b|.
std::uint64_t theta_dim(const CharacterVector &b, const WreathGroup &group);
// The L-orbit of b (distinct canonical vectors).
std::vector<std::vector<std::uint32_t>> orbit(const CharacterVector &b, const WreathGroup &group);

// GL variant only: minimum of theta_dim over characters that are nontrivial
// on the socle element l^{s-1} 1_I of the given block I.
std::uint64_t min_dim_for_block(const WreathGroup &group, std::size_t block);

struct FaithfulResult {
  std::uint64_t dim = 0;
  unsigned center_rank = 0;
  std::vector<MonomialRep> witnesses;
  bool abelian = false;     // characters of the whole (abelian) group were used
  bool certified = false;   // kernel intersection checked trivial
};

// Minimizes the sum of theta_dim over r = rank Z characters whose central
// characters restrict to a basis of the dual of the socle. Picks the lightest
// character for each restriction vector and then a minimum-weight basis
// greedily. The witness is certified by kernel_of_theta.
FaithfulResult min_faithful_dim(const WreathGroup &group,
                                std::uint64_t budget = kDefaultBudget);
// Same minimum by trying every r-subset of the (restriction, dimension)
// classes; only for small groups.
FaithfulResult min_faithful_dim_exhaustive(const WreathGroup &group,
                                           std::uint64_t budget = kDefaultBudget);

// Element ids x with tau^{-1} x tau in Delta L_b and (psi_b x lambda) of it
// trivial for every tau in L.
std::vector<std::uint64_t> kernel_of_theta(const CharacterVector &b, const WreathGroup &group,
                                           std::uint64_t budget = kDefaultBudget);
bool is_faithful(const std::vector<CharacterVector> &chars, const WreathGroup &group,
                 std::uint64_t budget = kDefaultBudget);

nlohmann::ordered_json witness_to_json(const WreathGroup &group, const FaithfulResult &result);

}  // namespace essdim
