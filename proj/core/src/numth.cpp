#include "essdim/numth.hpp"

#include <stdexcept>
#include <string>

#include "essdim/error.hpp"

namespace essdim {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) result = mulmod(result, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return result;
}

unsigned order_of_residue(std::uint64_t residue, std::uint64_t l) {
  std::uint64_t x = residue;
  for (unsigned d = 1; d < l; ++d) {
    if (x == 1) return d;
    x = mulmod(x, residue, l);
  }
  throw InternalError("multiplicative order exceeds l - 1");
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % small == 0) return n == small;
  }
  // Deterministic Miller-Rabin for 64-bit inputs.
  std::uint64_t d = n - 1;
  unsigned twos = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++twos;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < twos; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

void require_prime(std::uint64_t l, const char *what) {
  if (!is_prime(l)) {
    throw std::invalid_argument(std::string(what) + " = " + std::to_string(l) +
                                " is not prime");
  }
}

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t result = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && result > UINT64_MAX / base) throw std::overflow_error("ipow overflow");
    result *= base;
  }
  return result;
}

BigInt big_pow(std::uint64_t base, unsigned exp) {
  return boost::multiprecision::pow(BigInt(base), exp);
}

unsigned nu(std::uint64_t l, std::uint64_t n) {
  require_prime(l, "l");
  if (n == 0) throw std::invalid_argument("valuation of 0 is undefined");
  unsigned v = 0;
  while (n % l == 0) {
    n /= l;
    ++v;
  }
  return v;
}

unsigned nu(std::uint64_t l, const BigInt &n) {
  require_prime(l, "l");
  if (n <= 0) throw std::invalid_argument("valuation needs a positive integer");
  BigInt x = n;
  unsigned v = 0;
  while (x % l == 0) {
    x /= l;
    ++v;
  }
  return v;
}

unsigned nu_factorial(std::uint64_t l, std::uint64_t n) {
  require_prime(l, "l");
  unsigned total = 0;
  for (std::uint64_t power = l; power <= n; power *= l) {
    total += static_cast<unsigned>(n / power);
    if (power > UINT64_MAX / l) break;
  }
  return total;
}

unsigned mu(std::uint64_t l, std::uint64_t n) {
  require_prime(l, "l");
  if (n == 0) throw std::invalid_argument("mu needs n >= 1");
  unsigned d = 0;
  while (n >= l) {
    n /= l;
    ++d;
  }
  return d;
}

unsigned mult_order(std::uint64_t q, std::uint64_t l) {
  require_prime(l, "l");
  if (q % l == 0) {
    throw std::invalid_argument("mult_order: l divides q");
  }
  return order_of_residue(q % l, l);
}

SylowParams sylow_params(std::uint64_t n, std::uint64_t p, unsigned r, std::uint64_t l) {
  require_prime(p, "p");
  require_prime(l, "l");
  if (r == 0) throw std::invalid_argument("r must be positive");
  if (n == 0) throw std::invalid_argument("n must be positive");
  if (l == p) {
    throw DefiningPrime("l = p = " + std::to_string(l) +
                        " is the defining characteristic");
  }
  SylowParams sp;
  sp.l = l;
  sp.p = p;
  sp.r = r;
  sp.n = n;
  sp.d = order_of_residue(powmod(p, r, l), l);
  sp.s = nu(l, BigInt(big_pow(p, r * sp.d) - 1));
  sp.n0 = n / sp.d;
  return sp;
}

std::uint64_t digit(std::uint64_t m, std::uint64_t l, unsigned k) {
  for (unsigned i = 0; i < k && m > 0; ++i) m /= l;
  return m % l;
}

unsigned mu_prime(std::uint64_t m, std::uint64_t l) {
  if (m == 0) throw std::invalid_argument("mu_prime needs m >= 1");
  unsigned k = 0;
  while (m % l == 0) {
    m /= l;
    ++k;
  }
  return k;
}

std::uint64_t digit_sum(std::uint64_t m, std::uint64_t l) {
  std::uint64_t total = 0;
  while (m > 0) {
    total += m % l;
    m /= l;
  }
  return total;
}

std::uint64_t BlockStructure::block_size(std::size_t i) const {
  return ipow(l, blocks.at(i).size_exponent);
}

BlockStructure block_structure(std::uint64_t m, std::uint64_t l) {
  require_prime(l, "l");
  if (m == 0) throw std::invalid_argument("block_structure needs m >= 1");
  BlockStructure bs;
  bs.m = m;
  bs.l = l;
  std::uint64_t start = 1;
  for (int k = static_cast<int>(mu(l, m)); k >= 0; --k) {
    std::uint64_t count = digit(m, l, static_cast<unsigned>(k));
    std::uint64_t size = ipow(l, static_cast<unsigned>(k));
    for (std::uint64_t c = 0; c < count; ++c) {
      bs.blocks.push_back({start, static_cast<unsigned>(k)});
      start += size;
    }
  }
  bs.rank = bs.blocks.size();
  return bs;
}

}  // namespace essdim
