#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace essdim {

using BigInt = boost::multiprecision::cpp_int;

bool is_prime(std::uint64_t n);

// Throws std::invalid_argument unless l is prime.
void require_prime(std::uint64_t l, const char *what);

// Exact power; throws std::overflow_error past 64 bits.
std::uint64_t ipow(std::uint64_t base, unsigned exp);
BigInt big_pow(std::uint64_t base, unsigned exp);

// Highest power of l dividing n (n >= 1).
unsigned nu(std::uint64_t l, std::uint64_t n);
unsigned nu(std::uint64_t l, const BigInt &n);

// Exponent of l in n! (Legendre).
unsigned nu_factorial(std::uint64_t l, std::uint64_t n);

// Largest d with l^d <= n (n >= 1).
unsigned mu(std::uint64_t l, std::uint64_t n);

// Least d >= 1 with q^d = 1 mod l.
unsigned mult_order(std::uint64_t q, std::uint64_t l);

struct SylowParams {
  std::uint64_t l = 0;
  std::uint64_t p = 0;
  unsigned r = 0;
  std::uint64_t n = 0;
  unsigned d = 0;
  unsigned s = 0;
  std::uint64_t n0 = 0;
};

// d = ord_l(q), s = nu_l(q^d - 1) in exact arithmetic, n0 = floor(n/d).
SylowParams sylow_params(std::uint64_t n, std::uint64_t p, unsigned r, std::uint64_t l);

// k-th base-l digit of m.
std::uint64_t digit(std::uint64_t m, std::uint64_t l, unsigned k);

// Position of the lowest nonzero base-l digit of m (m >= 1).
unsigned mu_prime(std::uint64_t m, std::uint64_t l);

std::uint64_t digit_sum(std::uint64_t m, std::uint64_t l);

struct Block {
  std::uint64_t start = 0;  // 1-based
  unsigned size_exponent = 0;
};

struct BlockStructure {
  std::uint64_t m = 0;
  std::uint64_t l = 0;
  std::vector<Block> blocks;  // largest blocks first, consecutive indices
  std::uint64_t rank = 0;

  std::uint64_t block_size(std::size_t i) const;
};

BlockStructure block_structure(std::uint64_t m, std::uint64_t l);

}  // namespace essdim
