#include "essdim/gf_field.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <tuple>
#include <stdexcept>
#include <utility>

#include "essdim/error.hpp"
#include "essdim/numth.hpp"

namespace essdim::gf {

namespace {

using Poly = std::vector<std::uint64_t>;

void trim(Poly &a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  std::uint64_t result = 1;
  std::uint64_t base = a % p;
  std::uint64_t e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

Poly poly_mod(Poly a, const Poly &f, std::uint64_t p) {
  trim(a);
  const std::size_t df = f.size() - 1;
  const std::uint64_t lead_inv = inv_mod(f.back(), p);
  while (a.size() > df) {
    const std::uint64_t c = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - 1 - df;
    for (std::size_t i = 0; i <= df; ++i) {
      a[shift + i] = (a[shift + i] + p - c * f[i] % p) % p;
    }
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly &a, const Poly &b, const Poly &f, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  }
  return poly_mod(std::move(c), f, p);
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly decode(std::uint64_t code, std::uint64_t p, unsigned r) {
  Poly a(r, 0);
  for (unsigned i = 0; i < r; ++i) {
    a[i] = code % p;
    code /= p;
  }
  trim(a);
  return a;
}

std::uint64_t encode(const Poly &a, std::uint64_t p) {
  std::uint64_t code = 0;
  for (std::size_t i = a.size(); i-- > 0;) code = code * p + a[i];
  return code;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_irreducible(const std::vector<std::uint64_t> &poly, std::uint64_t p) {
  Poly f = poly;
  trim(f);
  if (f.size() < 2) return false;
  const std::size_t deg = f.size() - 1;
  if (deg == 1) return true;
  // gcd(x^{p^i} - x, f) = 1 for all i <= deg/2 rules out every factor.
  Poly x{0, 1};
  Poly power = poly_mod(x, f, p);
  for (std::size_t i = 1; i <= deg / 2; ++i) {
    Poly acc{1};
    Poly base = power;
    std::uint64_t e = p;
    while (e) {
      if (e & 1) acc = poly_mulmod(acc, base, f, p);
      base = poly_mulmod(base, base, f, p);
      e >>= 1;
    }
    power = acc;
    Poly diff = power;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;
    Poly g = poly_gcd(f, diff, p);
    if (g.size() != 1) return false;
  }
  return true;
}

Field::Field(std::uint64_t p, unsigned r) : p_(p), r_(r) {
  require_prime(p, "p");
  if (r == 0) throw std::invalid_argument("field degree must be positive");
  BigInt big_q = big_pow(p, r);
  if (big_q > kMaxOrder) {
    throw std::invalid_argument("field of order " + big_q.str() + " exceeds the table limit");
  }
  q_ = static_cast<std::uint64_t>(big_q);

  const std::uint64_t lower_count = q_;
  for (std::uint64_t code = 0; code < lower_count; ++code) {
    Poly candidate(r + 1, 0);
    std::uint64_t c = code;
    for (unsigned i = 0; i < r; ++i) {
      candidate[i] = c % p;
      c /= p;
    }
    candidate[r] = 1;
    if (is_irreducible(candidate, p)) {
      modulus_ = candidate;
      break;
    }
  }
  if (modulus_.empty()) throw InternalError("no irreducible modulus found");

  neg_.resize(q_);
  for (std::uint64_t a = 0; a < q_; ++a) {
    Poly digits(r, 0);
    std::uint64_t c = a;
    for (unsigned i = 0; i < r; ++i) {
      digits[i] = (p - c % p) % p;
      c /= p;
    }
    neg_[a] = static_cast<Elem>(encode(digits, p));
  }

  auto slow_mul = [&](std::uint64_t a, std::uint64_t b) {
    return encode(poly_mulmod(decode(a, p, r), decode(b, p, r), modulus_, p), p);
  };
  auto slow_pow = [&](std::uint64_t a, std::uint64_t e) {
    std::uint64_t acc = 1;
    while (e) {
      if (e & 1) acc = slow_mul(acc, a);
      a = slow_mul(a, a);
      e >>= 1;
    }
    return acc;
  };

  const std::uint64_t group = q_ - 1;
  const std::vector<std::uint64_t> factors = prime_factors(group);
  std::uint64_t gen = 1;
  for (std::uint64_t a = 1; a < q_; ++a) {
    bool primitive = true;
    for (std::uint64_t f : factors) {
      if (slow_pow(a, group / f) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      gen = a;
      break;
    }
  }

  exp_.resize(group);
  log_.assign(q_, 0);
  std::uint64_t x = 1;
  for (std::uint64_t k = 0; k < group; ++k) {
    exp_[k] = static_cast<Elem>(x);
    log_[x] = static_cast<Elem>(k);
    x = slow_mul(x, gen);
  }
  if (x != 1) throw InternalError("generator search failed");

  if (p != 2 && q_ <= 1024) {
    add_table_.resize(q_ * q_);
    for (std::uint64_t a = 0; a < q_; ++a) {
      for (std::uint64_t b = 0; b < q_; ++b) {
        std::uint64_t ca = a, cb = b, code = 0, scale = 1;
        for (unsigned i = 0; i < r; ++i) {
          code += ((ca % p + cb % p) % p) * scale;
          ca /= p;
          cb /= p;
          scale *= p;
        }
        add_table_[a * q_ + b] = static_cast<Elem>(code);
      }
    }
  }
}

Elem Field::add(Elem a, Elem b) const {
  if (p_ == 2) return a ^ b;
  if (!add_table_.empty()) return add_table_[static_cast<std::uint64_t>(a) * q_ + b];
  std::uint64_t ca = a, cb = b, code = 0, scale = 1;
  for (unsigned i = 0; i < r_; ++i) {
    code += ((ca % p_ + cb % p_) % p_) * scale;
    ca /= p_;
    cb /= p_;
    scale *= p_;
  }
  return static_cast<Elem>(code);
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw std::domain_error("division by zero in finite field");
  const std::uint64_t k = log_[a];
  return exp_[k == 0 ? 0 : (q_ - 1 - k)];
}

Elem Field::pow(Elem a, std::int64_t e) const {
  if (a == 0) {
    if (e < 0) throw std::domain_error("negative power of zero");
    return e == 0 ? 1 : 0;
  }
  const std::int64_t group = static_cast<std::int64_t>(q_ - 1);
  const std::int64_t k = static_cast<std::int64_t>(log_[a]);
  const __int128 prod = static_cast<__int128>(k) * (e % group);
  std::int64_t idx = static_cast<std::int64_t>(prod % group);
  if (idx < 0) idx += group;
  return exp_[static_cast<std::size_t>(idx)];
}

std::uint64_t Field::log(Elem a) const {
  if (a == 0) throw std::domain_error("log of zero");
  return log_[a];
}

std::uint64_t Field::element_order(Elem a) const {
  if (a == 0) throw std::domain_error("element_order of zero");
  const std::uint64_t group = q_ - 1;
  return group / std::gcd(group, static_cast<std::uint64_t>(log_[a]));
}

Elem Field::frobenius(Elem a, unsigned k) const {
  if (a == 0) return 0;
  const std::uint64_t group = q_ - 1;
  std::uint64_t factor = 1;
  for (unsigned i = 0; i < k % r_; ++i) factor = factor * p_ % group;
  return exp_[static_cast<std::uint64_t>(static_cast<unsigned __int128>(log_[a]) * factor % group)];
}

bool Field::is_square(Elem a) const {
  if (p_ == 2 || a == 0) return true;
  return log_[a] % 2 == 0;
}

Elem Field::least_nonsquare() const {
  if (p_ == 2) throw std::invalid_argument("every element is a square in characteristic 2");
  for (Elem a = 1; a < q_; ++a) {
    if (!is_square(a)) return a;
  }
  throw InternalError("no non-square found");
}

Elem Field::from_int(std::int64_t v) const {
  const std::int64_t p = static_cast<std::int64_t>(p_);
  return static_cast<Elem>(((v % p) + p) % p);
}

std::vector<std::uint64_t> Field::coefficients(Elem a) const {
  std::vector<std::uint64_t> out(r_, 0);
  std::uint64_t c = a;
  for (unsigned i = 0; i < r_; ++i) {
    out[i] = c % p_;
    c /= p_;
  }
  return out;
}

std::string Field::to_string(Elem a) const { return std::to_string(a); }

FieldPtr make_field(std::uint64_t p, unsigned r) {
  static std::mutex mutex;
  static std::map<std::pair<std::uint64_t, unsigned>, FieldPtr> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_pair(p, r);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto field = std::make_shared<const Field>(p, r);
  cache.emplace(key, field);
  return field;
}

Elem root_of_unity(const Field &field, std::uint64_t order) {
  const std::uint64_t group = field.q() - 1;
  if (order == 0 || group % order != 0) {
    throw std::invalid_argument("no element of order " + std::to_string(order) + " in F_" +
                                std::to_string(field.q()));
  }
  return field.pow(field.generator(), static_cast<std::int64_t>(group / order));
}

Embedding::Embedding(FieldPtr small, FieldPtr big) : small_(std::move(small)), big_(std::move(big)) {
  if (small_->p() != big_->p() || big_->r() % small_->r() != 0) {
    throw std::invalid_argument("no embedding between these fields");
  }
  const Field &K = *big_;
  const auto &f = small_->modulus();
  Elem root = 0;
  bool found = false;
  for (std::uint64_t x = 0; x < K.q() && !found; ++x) {
    Elem acc = 0;
    for (std::size_t i = f.size(); i-- > 0;) {
      acc = K.add(K.mul(acc, static_cast<Elem>(x)), K.from_int(static_cast<std::int64_t>(f[i])));
    }
    if (acc == 0) {
      root = static_cast<Elem>(x);
      found = true;
    }
  }
  if (!found) throw InternalError("small modulus has no root in the big field");

  to_big_.resize(small_->q());
  for (std::uint64_t a = 0; a < small_->q(); ++a) {
    const auto coeffs = small_->coefficients(static_cast<Elem>(a));
    Elem acc = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
      acc = K.add(K.mul(acc, root), K.from_int(static_cast<std::int64_t>(coeffs[i])));
    }
    to_big_[a] = acc;
  }
  const std::uint64_t qs = small_->q() - 1;
  index_ = (K.q() - 1) / qs;
  if (qs > 1) {
    const std::uint64_t c = K.log(to_big_[small_->generator()]) / index_;
    // c is a unit mod qs because the image of the generator has order qs.
    std::int64_t t0 = 0, t1 = 1;
    std::int64_t r0 = static_cast<std::int64_t>(qs), r1 = static_cast<std::int64_t>(c % qs);
    while (r1 != 0) {
      const std::int64_t quotient = r0 / r1;
      std::tie(t0, t1) = std::make_pair(t1, t0 - quotient * t1);
      std::tie(r0, r1) = std::make_pair(r1, r0 - quotient * r1);
    }
    if (r0 != 1) throw InternalError("embedding generator is not primitive");
    gen_inverse_ = static_cast<std::uint64_t>((t0 % static_cast<std::int64_t>(qs) +
                                               static_cast<std::int64_t>(qs)) %
                                              static_cast<std::int64_t>(qs));
  }
}

bool Embedding::in_subfield(Elem a) const {
  if (a == 0) return true;
  return big_->log(a) % index_ == 0;
}

Elem Embedding::to_small(Elem a) const {
  if (a == 0) return 0;
  if (!in_subfield(a)) throw std::invalid_argument("element is not in the subfield");
  const std::uint64_t qs = small_->q() - 1;
  if (qs == 1) return 1;
  const std::uint64_t j = big_->log(a) / index_;
  const std::uint64_t i =
      static_cast<std::uint64_t>(static_cast<unsigned __int128>(j) * gen_inverse_ % qs);
  return small_->exp(i);
}

Elem Embedding::trace(Elem a) const {
  const unsigned degree = big_->r() / small_->r();
  Elem acc = 0;
  Elem x = a;
  for (unsigned i = 0; i < degree; ++i) {
    acc = big_->add(acc, x);
    x = big_->frobenius(x, small_->r());
  }
  return to_small(acc);
}

std::vector<Elem> Embedding::minimal_polynomial(Elem a) const {
  const Field &K = *big_;
  std::vector<Elem> conjugates{a};
  for (Elem x = K.frobenius(a, small_->r()); x != a; x = K.frobenius(x, small_->r())) {
    conjugates.push_back(x);
  }
  std::vector<Elem> poly{1};
  for (Elem c : conjugates) {
    std::vector<Elem> next(poly.size() + 1, 0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] = K.add(next[i + 1], poly[i]);
      next[i] = K.sub(next[i], K.mul(c, poly[i]));
    }
    poly = std::move(next);
  }
  std::vector<Elem> out(poly.size());
  for (std::size_t i = 0; i < poly.size(); ++i) out[i] = to_small(poly[i]);
  return out;
}

}  // namespace essdim::gf
