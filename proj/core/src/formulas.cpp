#include "essdim/formulas.hpp"

#include <stdexcept>
#include <string>

#include "essdim/error.hpp"
#include "essdim/numth.hpp"

namespace essdim {

namespace {

std::uint64_t q_mod(std::uint64_t p, unsigned r, std::uint64_t m) {
  std::uint64_t x = 1 % m;
  for (unsigned i = 0; i < r; ++i) x = x * (p % m) % m;
  return x;
}

std::string power_text(std::uint64_t l, unsigned s) {
  return (big_pow(l, s)).str();
}

std::string gl_name(std::uint64_t n, unsigned r_factor) {
  std::string field = r_factor == 2 ? "F_{q^2}" : "F_q";
  return "GL_" + std::to_string(n) + "(" + field + ")";
}

std::string sl_name(std::uint64_t n, unsigned r_factor, const char *prefix) {
  std::string field = r_factor == 2 ? "F_{q^2}" : "F_q";
  return std::string(prefix) + "_" + std::to_string(n) + "(" + field + ")";
}

Reduction gl_reduction(std::uint64_t n, std::uint64_t p, unsigned r, std::string label) {
  Reduction red;
  red.kind = n == 0 ? Reduction::Kind::Trivial : Reduction::Kind::GL;
  red.n = n;
  red.p = p;
  red.r = r;
  red.label = std::move(label);
  return red;
}

// Linear families at (n, p^r, l) after validation.
Reduction linear_reduction(FamilyTag tag, std::uint64_t n, std::uint64_t nprime, std::uint64_t p,
                           unsigned r, std::uint64_t l, unsigned r_factor) {
  const bool divides_q1 = q_mod(p, r, l) == 1;
  const std::string gl = gl_name(n, r_factor);
  if (tag == FamilyTag::GL) {
    return gl_reduction(n, p, r, gl + ": base-l digit sum of n0 = floor(n/d)");
  }
  if (!divides_q1) {
    return gl_reduction(n, p, r,
                        sl_name(n, r_factor, tag == FamilyTag::SL ? "SL" : "PSL") +
                            " with l ∤ q-1: same Sylow l-subgroup as " + gl);
  }
  Reduction red;
  red.n = n;
  red.p = p;
  red.r = r;
  red.subtract = true;
  if (tag == FamilyTag::SL) {
    red.kind = Reduction::Kind::SL;
    red.label = sl_name(n, r_factor, "SL") + " with l | q-1: " + gl + " value minus l^{mu'(n)}";
    return red;
  }
  const std::uint64_t quotient = tag == FamilyTag::SLQuotient ? nprime : n;
  const char *name = tag == FamilyTag::SLQuotient ? "SL/mu_n'" : "PSL";
  if (quotient % l != 0) {
    red.kind = Reduction::Kind::SL;
    red.label = sl_name(n, r_factor, name) +
                " with l | q-1 and l ∤ " + (tag == FamilyTag::SLQuotient ? "n'" : "n") +
                ": scalar quotient prime to l, equals the SL value";
    return red;
  }
  red.kind = Reduction::Kind::PSL;
  red.nprime = quotient;
  const unsigned s = sylow_params(n, p, r, l).s;
  const unsigned t = nu(l, quotient);
  red.label = sl_name(n, r_factor, name) + " with l | q-1 and l | " +
              (tag == FamilyTag::SLQuotient ? "n'" : "n") + " (" +
              (s <= t ? "s <= t" : "s > t") + "): equals the SL value";
  return red;
}

std::uint64_t reduced_value(const Reduction &red, std::uint64_t l) {
  if (red.kind == Reduction::Kind::Trivial) return 0;
  std::uint64_t base;
  if (red.kind == Reduction::Kind::Unitary2) {
    base = gl_digit_sum(red.n, 2);
  } else {
    base = gl_digit_sum(sylow_params(red.n, red.p, red.r, l).n0, l);
  }
  if (!red.subtract) return base;
  return base - ipow(l, mu_prime(red.n, l));
}

bool reduced_sylow_nontrivial(const Reduction &red, std::uint64_t l) {
  switch (red.kind) {
    case Reduction::Kind::Trivial:
      return false;
    case Reduction::Kind::GL:
      return sylow_params(red.n, red.p, red.r, l).n0 > 0;
    default:
      return red.n >= 2 || !red.subtract;
  }
}

}  // namespace

nlohmann::ordered_json EdResult::to_json() const {
  nlohmann::ordered_json j;
  j["value"] = value;
  j["case_label"] = case_label;
  j["assumptions"] = assumptions;
  j["warnings"] = warnings;
  return j;
}

std::uint64_t gl_digit_sum(std::uint64_t m, std::uint64_t l) {
  if (m == 0) return 0;
  std::uint64_t total = 0;
  for (unsigned k = 0; k <= mu(l, m); ++k) total += digit(m, l, k) * ipow(l, k);
  return total;
}

std::vector<std::string> validate(const Family &family, std::uint64_t n, std::uint64_t p,
                                  unsigned r, std::uint64_t l) {
  require_prime(p, "p");
  require_prime(l, "l");
  if (r == 0) throw std::invalid_argument("r must be positive");
  if (n == 0) throw std::invalid_argument("n must be positive");
  if (l == p) {
    throw DefiningPrime("l = p = " + std::to_string(l) +
                        " is the defining characteristic; not covered");
  }
  const FamilyTag tag = family.tag;
  if (tag == FamilyTag::SLQuotient) {
    if (family.nprime == 0 || n % family.nprime != 0) {
      throw std::invalid_argument("SLQuotient needs n' | n (n' = " +
                                  std::to_string(family.nprime) + ", n = " + std::to_string(n) +
                                  ")");
    }
  }
  if (is_symplectic(tag) && n % 2 != 0) {
    throw std::invalid_argument("symplectic groups need an even matrix dimension");
  }
  if (is_orthogonal(tag)) {
    if (n < 3) throw std::invalid_argument("orthogonal groups need n >= 3");
    const bool odd = orthogonal_type(tag) == Epsilon::Odd;
    if (odd != (n % 2 == 1)) {
      throw std::invalid_argument("orthogonal type does not match the parity of n");
    }
  }

  const std::uint64_t q4 = q_mod(p, r, 4);
  std::vector<std::string> assumptions{"char k ≠ " + std::to_string(l)};
  if (l == 2) {
    if (is_linear(tag)) {
      if (q4 != 1) {
        throw UnsupportedCase("q ≡ 3 (mod 4) unsupported for linear families at l = 2");
      }
      assumptions.push_back("q ≡ 1 (mod 4)");
    } else if (is_unitary(tag)) {
      if (q4 != 3) {
        throw UnsupportedCase("q ≡ 1 (mod 4) unsupported for unitary families at l = 2");
      }
      assumptions.push_back("q ≡ 3 (mod 4)");
      const unsigned s2 = nu(2, BigInt(big_pow(p, r) + 1));
      assumptions.push_back("k contains a primitive 2^{s'}-th root of unity (2^{s'} = " +
                            power_text(2, s2) + ")");
      return assumptions;
    } else {
      throw UnsupportedCase("l = 2 unsupported for symplectic and orthogonal families");
    }
  }
  const SylowParams sp = sylow_params(n, p, r, l);
  assumptions.push_back("k contains a primitive l^s-th root of unity (l^s = " +
                        power_text(l, sp.s) + ")");
  return assumptions;
}

Reduction reduce(const Family &family, std::uint64_t n, std::uint64_t p, unsigned r,
                 std::uint64_t l) {
  validate(family, n, p, r, l);
  const FamilyTag tag = family.tag;
  if (is_linear(tag)) return linear_reduction(tag, n, family.nprime, p, r, l, 1);

  const unsigned d = sylow_params(n, p, r, l).d;
  if (is_symplectic(tag)) {
    const std::uint64_t half = n / 2;
    const std::string head = std::string(tag == FamilyTag::PSp ? "PSp" : "Sp") + "(" +
                             std::to_string(n) + ",q)";
    const std::string tail = tag == FamilyTag::PSp ? "; center has order prime to l" : "";
    if (d % 2 == 0) {
      return gl_reduction(2 * half, p, r,
                          head + ", d even: reduces to " + gl_name(2 * half, 1) + tail);
    }
    return gl_reduction(half, p, r, head + ", d odd: reduces to " + gl_name(half, 1) + tail);
  }

  if (is_orthogonal(tag)) {
    const Epsilon eps = orthogonal_type(tag);
    const bool proj = tag == FamilyTag::POmegaOdd || tag == FamilyTag::POmegaPlus ||
                      tag == FamilyTag::POmegaMinus;
    const std::string tail = proj ? "; same l-part as O" : "";
    const std::uint64_t m = n / 2;
    std::uint64_t rank;
    std::string branch;
    if (eps == Epsilon::Odd) {
      rank = d % 2 == 0 ? 2 * m : m;
      branch = "O(" + std::to_string(n) + ",q), d " + (d % 2 == 0 ? "even" : "odd");
    } else {
      const char *sign = eps == Epsilon::Plus ? "+" : "-";
      if (d % 2 == 1) {
        rank = eps == Epsilon::Plus ? m : m - 1;
        branch = std::string("O^") + sign + "(" + std::to_string(n) + ",q), d odd";
      } else {
        const std::uint64_t n0 = (2 * m) / d;
        const bool full = (eps == Epsilon::Plus) == (n0 % 2 == 0);
        rank = full ? 2 * m : 2 * m - 2;
        branch = std::string("O^") + sign + "(" + std::to_string(n) + ",q), d even, n0 = " +
                 std::to_string(n0) + (n0 % 2 == 0 ? " even" : " odd");
      }
    }
    return gl_reduction(rank, p, r, branch + ": reduces to " + gl_name(rank, 1) + tail);
  }

  // Unitary families over F_{q^2}.
  const UnitaryVariant variant = unitary_variant(tag);
  const char *vname = variant == UnitaryVariant::U ? "U" : variant == UnitaryVariant::SU ? "SU"
                                                                                          : "PSU";
  const std::string head = std::string(vname) + "(" + std::to_string(n) + ",q^2)";
  if (l == 2) {
    Reduction red;
    red.kind = Reduction::Kind::Unitary2;
    red.n = n;
    red.p = p;
    red.r = r;
    red.subtract = variant != UnitaryVariant::U;
    if (red.subtract) {
      red.label = head + " at l = 2: U value minus 2^{mu_2(n)'}"
                  " (mu_2(n)' read with the factor-2 digit convention)";
    } else {
      red.label = head + " at l = 2: base-2 digit sum of n";
    }
    if (variant == UnitaryVariant::PSU) red.label += "; PSU equals SU";
    return red;
  }
  const bool divides_q_plus_1 = (q_mod(p, r, l) + 1) % l == 0;
  if (variant == UnitaryVariant::PSU && divides_q_plus_1 && n % l == 0) {
    Reduction red = linear_reduction(FamilyTag::PSL, n, n, p, 2 * r, l, 2);
    red.label = head + " with l | n and l | q+1: " + red.label;
    return red;
  }
  if (variant != UnitaryVariant::U && divides_q_plus_1) {
    Reduction red = linear_reduction(FamilyTag::SL, n, n, p, 2 * r, l, 2);
    red.label = head + " with l | q+1: " + red.label;
    return red;
  }
  const std::string prefix = variant == UnitaryVariant::U ? head + ", "
                             : head + " with l ∤ q+1 or l ∤ n: equals U; ";
  if (d % 4 == 2) {
    return gl_reduction(n, p, 2 * r, prefix + "d ≡ 2 (mod 4): reduces to " + gl_name(n, 2));
  }
  return gl_reduction(n / 2, p, 2 * r,
                      prefix + "d ≢ 2 (mod 4): reduces to " + gl_name(n / 2, 2));
}

EdResult essential_dimension(const Family &family, std::uint64_t n, std::uint64_t p, unsigned r,
                             std::uint64_t l) {
  EdResult res;
  res.assumptions = validate(family, n, p, r, l);
  const Reduction red = reduce(family, n, p, r, l);
  res.value = reduced_value(red, l);
  res.case_label = red.label;
  if (red.kind == Reduction::Kind::Trivial ||
      (red.kind == Reduction::Kind::GL && sylow_params(red.n, red.p, red.r, l).n0 == 0)) {
    res.case_label += " (trivial Sylow l-subgroup)";
  }
  if (res.value == 0 && reduced_sylow_nontrivial(red, l)) {
    res.warnings.push_back("DEGENERATE_LPOWER: value 0 for a nontrivial Sylow l-subgroup (n = " +
                           std::to_string(red.n) + " is a power of l in the subtraction branch)");
  }
  return res;
}

EdResult ed_gl(std::uint64_t n, std::uint64_t p, unsigned r, std::uint64_t l) {
  EdResult res = essential_dimension({FamilyTag::GL}, n, p, r, l);
  const std::uint64_t n0 = sylow_params(n, p, r, l).n0;
  if (res.value != n0) throw InternalError("digit sum of n0 differs from n0");
  return res;
}

EdResult ed_sl(std::uint64_t n, std::uint64_t p, unsigned r, std::uint64_t l) {
  return essential_dimension({FamilyTag::SL}, n, p, r, l);
}

EdResult ed_psl(std::uint64_t n, std::uint64_t p, unsigned r, std::uint64_t l) {
  return essential_dimension({FamilyTag::PSL}, n, p, r, l);
}

EdResult ed_sl_quotient(std::uint64_t n, std::uint64_t nprime, std::uint64_t p, unsigned r,
                        std::uint64_t l) {
  return essential_dimension({FamilyTag::SLQuotient, nprime}, n, p, r, l);
}

EdResult ed_symplectic(std::uint64_t n_half, std::uint64_t p, unsigned r, std::uint64_t l,
                       bool projective) {
  return essential_dimension({projective ? FamilyTag::PSp : FamilyTag::Sp}, 2 * n_half, p, r, l);
}

EdResult ed_orthogonal(std::uint64_t n, Epsilon eps, std::uint64_t p, unsigned r,
                       std::uint64_t l, bool projective) {
  FamilyTag tag;
  switch (eps) {
    case Epsilon::Plus:
      tag = projective ? FamilyTag::POmegaPlus : FamilyTag::OrthPlus;
      break;
    case Epsilon::Minus:
      tag = projective ? FamilyTag::POmegaMinus : FamilyTag::OrthMinus;
      break;
    default:
      tag = projective ? FamilyTag::POmegaOdd : FamilyTag::OrthOdd;
  }
  return essential_dimension({tag}, n, p, r, l);
}

EdResult ed_unitary(std::uint64_t n, UnitaryVariant variant, std::uint64_t p, unsigned r,
                    std::uint64_t l) {
  if (l == 2) throw std::invalid_argument("ed_unitary covers l != 2; use ed_unitary_l2");
  const FamilyTag tag = variant == UnitaryVariant::U    ? FamilyTag::U
                        : variant == UnitaryVariant::SU ? FamilyTag::SU
                                                        : FamilyTag::PSU;
  return essential_dimension({tag}, n, p, r, l);
}

EdResult ed_unitary_l2(std::uint64_t n, UnitaryVariant variant, std::uint64_t p, unsigned r) {
  const FamilyTag tag = variant == UnitaryVariant::U    ? FamilyTag::U
                        : variant == UnitaryVariant::SU ? FamilyTag::SU
                                                        : FamilyTag::PSU;
  return essential_dimension({tag}, n, p, r, 2);
}

bool is_lpower_edge(const Family &family, std::uint64_t n, std::uint64_t p, unsigned r,
                    std::uint64_t l) {
  const Reduction red = reduce(family, n, p, r, l);
  if (!red.subtract || red.n < 2) return false;
  std::uint64_t m = red.n;
  while (m % l == 0) m /= l;
  return m == 1;
}

std::uint64_t predicted_center_rank(const Family &family, std::uint64_t n, std::uint64_t p,
                                    unsigned r, std::uint64_t l) {
  const Reduction red = reduce(family, n, p, r, l);
  switch (red.kind) {
    case Reduction::Kind::Trivial:
      return 0;
    case Reduction::Kind::GL:
      return digit_sum(sylow_params(red.n, red.p, red.r, l).n0, l);
    default:
      return red.subtract ? digit_sum(red.n, l) - 1 : digit_sum(red.n, l);
  }
}

}  // namespace essdim
