#include "essdim/mackey.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <stdexcept>
#include <unordered_set>

#include "essdim/error.hpp"
#include "essdim/numth.hpp"

namespace essdim {

namespace {

std::uint64_t char_modulus(const WreathGroup &group, const CharacterVector &ch) {
  return std::max<std::uint64_t>(group.modulus(), ch.lambda_modulus);
}

// Value of psi_b x lambda at (v, sigma) in Z/D, D = char_modulus.
std::uint64_t char_value(const WreathGroup &group, const CharacterVector &ch,
                         const std::vector<std::uint32_t> &v, std::size_t sigma) {
  const std::uint64_t d = char_modulus(group, ch);
  std::uint64_t value = pairing(group, ch.b, v) * (d / group.modulus());
  if (!ch.lambda.empty()) value += std::uint64_t{ch.lambda[sigma]} * (d / ch.lambda_modulus);
  return value % d;
}

struct Prepared {
  CharacterVector ch;
  std::vector<char> stab;
};

Prepared prepare(const WreathGroup &group, const CharacterVector &ch) {
  Prepared p{ch, std::vector<char>(group.top().size(), 0)};
  for (auto i : stabilizer(ch, group)) p.stab[i] = 1;
  return p;
}

bool in_kernel(const WreathGroup &group, const Prepared &p, const WreathElement &x,
               std::size_t sigma) {
  for (std::size_t tau = 0; tau < group.top().size(); ++tau) {
    const std::size_t ti = group.top_inv(tau);
    const std::size_t conj = group.top_mul(group.top_mul(ti, sigma), tau);
    if (!p.stab[conj]) return false;
    if (char_value(group, p.ch, group.act(ti, x.v), conj) != 0) return false;
  }
  return true;
}

void check_budget(const WreathGroup &group, std::uint64_t budget) {
  if (group.order() > budget) {
    throw BudgetExceeded("group of order " + std::to_string(group.order()) +
                         " exceeds the enumeration budget");
  }
}

// Incremental row reduction over Z/l.
class SpanZl {
 public:
  SpanZl(std::uint64_t l, std::size_t dim) : l_(l), dim_(dim) {}

  bool independent(std::vector<std::uint64_t> u) const { return !reduce(u).empty(); }

  bool insert(std::vector<std::uint64_t> u) {
    auto r = reduce(std::move(u));
    if (r.empty()) return false;
    rows_.push_back(std::move(r));
    return true;
  }

  std::size_t rank() const { return rows_.size(); }

 private:
  // Returns the reduced vector normalized to leading 1, or empty if zero.
  std::vector<std::uint64_t> reduce(std::vector<std::uint64_t> u) const {
    for (const auto &row : rows_) {
      const std::size_t lead = leading(row);
      const std::uint64_t f = u[lead];
      if (!f) continue;
      for (std::size_t i = 0; i < dim_; ++i) u[i] = (u[i] + (l_ - f) * row[i]) % l_;
    }
    for (std::size_t i = 0; i < dim_; ++i) {
      if (u[i]) {
        const std::uint64_t inv = inverse(u[i]);
        for (auto &x : u) x = x * inv % l_;
        return u;
      }
    }
    return {};
  }

  std::size_t leading(const std::vector<std::uint64_t> &row) const {
    for (std::size_t i = 0; i < dim_; ++i) {
      if (row[i]) return i;
    }
    return dim_;
  }

  std::uint64_t inverse(std::uint64_t a) const {
    for (std::uint64_t x = 1; x < l_; ++x) {
      if (a * x % l_ == 1) return x;
    }
    throw InternalError("no inverse mod l");
  }

  std::uint64_t l_;
  std::size_t dim_;
  std::vector<std::vector<std::uint64_t>> rows_;
};

std::vector<std::uint64_t> socle_basis(const WreathGroup &group,
                                       const std::vector<std::uint64_t> &socle_elems) {
  const std::uint64_t e = group.id(group.identity());
  std::unordered_set<std::uint64_t> span{e};
  std::vector<std::uint64_t> basis;
  for (auto z : socle_elems) {
    if (span.count(z)) continue;
    basis.push_back(z);
    std::vector<std::uint64_t> old(span.begin(), span.end());
    std::uint64_t zk = e;
    for (std::uint64_t k = 1; k < group.l(); ++k) {
      zk = group.multiply(zk, z);
      for (auto a : old) span.insert(group.multiply(a, zk));
    }
  }
  return basis;
}

// Homomorphisms L -> Z/d for abelian L, as tables over permutation indices.
std::vector<std::vector<std::uint32_t>> homs_of_top(const WreathGroup &group, std::uint64_t d) {
  const auto &gens = group.top_generators();
  std::vector<std::size_t> gidx;
  std::vector<std::uint64_t> gorder;
  for (const auto &g : gens) {
    gidx.push_back(group.top_index(g));
    std::uint64_t o = 1;
    Perm acc = g;
    while (!acc.is_identity()) {
      acc = acc * g;
      ++o;
    }
    gorder.push_back(o);
  }
  const std::size_t k = group.top().size();
  const std::size_t id0 = group.top_index(Perm(group.m()));
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint64_t> vals(gens.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == gens.size()) {
      std::vector<std::int64_t> table(k, -1);
      table[id0] = 0;
      std::deque<std::size_t> queue{id0};
      bool ok = true;
      while (!queue.empty() && ok) {
        const std::size_t x = queue.front();
        queue.pop_front();
        for (std::size_t j = 0; j < gens.size(); ++j) {
          const std::size_t y = group.top_mul(gidx[j], x);
          const auto val = static_cast<std::int64_t>((vals[j] + table[x]) % d);
          if (table[y] < 0) {
            table[y] = val;
            queue.push_back(y);
          } else if (table[y] != val) {
            ok = false;
            break;
          }
        }
      }
      if (ok) out.emplace_back(table.begin(), table.end());
      return;
    }
    const std::uint64_t step = d / gorder[i];
    for (std::uint64_t a = 0; a < gorder[i]; ++a) {
      vals[i] = a * step;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

// A character together with its restriction vector on the socle basis.
struct Candidate {
  std::vector<std::uint64_t> u;
  std::uint64_t dim;
  CharacterVector ch;
};

struct Sweep {
  unsigned rank = 0;
  bool abelian = false;
  std::vector<Candidate> candidates;  // lightest character per restriction vector
};

Sweep sweep(const WreathGroup &group, std::uint64_t budget) {
  check_budget(group, budget);
  const CenterInfo info = center(group, budget);
  const auto basis = socle_basis(group, socle(group, info));
  if (basis.size() != info.rank) throw InternalError("socle basis size differs from center rank");

  const std::size_t id0 = group.top_index(Perm(group.m()));
  const std::size_t k = group.top().size();
  bool top_central = false;
  for (auto z : info.elements) top_central |= (z % k) != id0;

  Sweep out;
  out.rank = info.rank;
  std::vector<CharacterVector> chars;
  std::vector<WreathElement> zs;
  for (auto z : basis) zs.push_back(group.element(z));

  std::map<std::vector<std::uint64_t>, Candidate> best;
  auto consider = [&](const CharacterVector &ch, std::uint64_t dim) {
    const std::uint64_t d = char_modulus(group, ch);
    std::vector<std::uint64_t> u;
    bool zero = true;
    for (const auto &z : zs) {
      const std::uint64_t val = char_value(group, ch, z.v, group.top_index(z.tau));
      if (val % (d / group.l()) != 0) throw InternalError("central value outside the socle dual");
      u.push_back(val / (d / group.l()));
      zero &= u.back() == 0;
    }
    if (zero) return;
    auto it = best.find(u);
    if (it == best.end() || dim < it->second.dim) best[u] = Candidate{u, dim, ch};
  };

  if (!top_central) {
    for (std::uint64_t i = 0; i < character_count(group); ++i) {
      CharacterVector ch = character_at(group, i);
      consider(ch, theta_dim(ch, group));
    }
  } else {
    if (!is_abelian(group)) {
      throw InternalError("center meets the permutation part of a non-abelian model");
    }
    out.abelian = true;
    const std::uint64_t d = std::max<std::uint64_t>(group.modulus(), k);
    const auto homs = homs_of_top(group, d);
    for (std::uint64_t i = 0; i < character_count(group); ++i) {
      CharacterVector base = character_at(group, i);
      for (const auto &h : homs) {
        CharacterVector ch = base;
        ch.lambda = h;
        ch.lambda_modulus = d;
        consider(ch, 1);
      }
    }
  }
  for (auto &[u, c] : best) out.candidates.push_back(std::move(c));
  std::stable_sort(out.candidates.begin(), out.candidates.end(),
                   [](const Candidate &a, const Candidate &b) { return a.dim < b.dim; });
  return out;
}

void certify(const WreathGroup &group, FaithfulResult &result, std::uint64_t budget) {
  std::vector<CharacterVector> chars;
  for (auto &w : result.witnesses) {
    w.kernel_size = kernel_of_theta(w.b, group, budget).size();
    chars.push_back(w.b);
  }
  result.certified = is_faithful(chars, group, budget);
}

}  // namespace

std::vector<std::uint32_t> canonical_character(const WreathGroup &group,
                                               std::vector<std::uint32_t> b) {
  const std::size_t m = group.m();
  const std::uint64_t mod = group.modulus();
  if (b.size() != m) throw std::invalid_argument("character length mismatch");
  for (auto &x : b) x = static_cast<std::uint32_t>(x % mod);
  if (!group.sum_zero() || m == 0) return b;
  const std::uint64_t shift = b[m - 1];
  std::uint64_t total = 0;
  for (auto &x : b) {
    x = static_cast<std::uint32_t>((x + mod - shift) % mod);
    total += x;
  }
  const std::uint64_t lc = ipow(group.l(), group.scalar_exponent());
  if (total % lc != 0) {
    throw std::invalid_argument("character does not vanish on the central quotient");
  }
  return b;
}

std::uint64_t character_count(const WreathGroup &group) {
  const std::size_t m = group.m();
  const std::uint64_t mod = group.modulus();
  std::uint64_t count = 1;
  if (!group.sum_zero()) {
    for (std::size_t i = 0; i < m; ++i) count *= mod;
    return count;
  }
  if (m < 2) return 1;
  for (std::size_t i = 0; i + 2 < m; ++i) count *= mod;
  return count * (mod / ipow(group.l(), group.scalar_exponent()));
}

CharacterVector character_at(const WreathGroup &group, std::uint64_t index) {
  const std::size_t m = group.m();
  const std::uint64_t mod = group.modulus();
  CharacterVector ch;
  ch.b.assign(m, 0);
  if (!group.sum_zero()) {
    for (std::size_t i = 0; i < m; ++i) {
      ch.b[i] = static_cast<std::uint32_t>(index % mod);
      index /= mod;
    }
    return ch;
  }
  if (m < 2) return ch;
  const std::uint64_t lc = ipow(group.l(), group.scalar_exponent());
  std::uint64_t total = 0;
  for (std::size_t i = 0; i + 2 < m; ++i) {
    ch.b[i] = static_cast<std::uint32_t>(index % mod);
    total += ch.b[i];
    index /= mod;
  }
  ch.b[m - 2] = static_cast<std::uint32_t>((lc - total % lc) % lc + index * lc);
  return ch;
}

std::uint64_t pairing(const WreathGroup &group, const std::vector<std::uint32_t> &b,
                      const std::vector<std::uint32_t> &v) {
  const std::uint64_t mod = group.modulus();
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < b.size(); ++i) acc = (acc + std::uint64_t{b[i]} * v[i]) % mod;
  return acc;
}

std::vector<std::uint32_t> act_character(const WreathGroup &group, std::size_t tau,
                                         const std::vector<std::uint32_t> &b) {
  return canonical_character(group, group.act(tau, b));
}

std::vector<std::size_t> stabilizer(const CharacterVector &b, const WreathGroup &group) {
  const auto canon = canonical_character(group, b.b);
  std::vector<std::size_t> out;
  for (std::size_t tau = 0; tau < group.top().size(); ++tau) {
    if (act_character(group, tau, canon) == canon) out.push_back(tau);
  }
  return out;
}

std::uint64_t theta_dim(const CharacterVector &b, const WreathGroup &group) {
  return group.top().size() / stabilizer(b, group).size();
}

std::vector<std::vector<std::uint32_t>> orbit(const CharacterVector &b, const WreathGroup &group) {
  const auto canon = canonical_character(group, b.b);
  std::vector<std::vector<std::uint32_t>> out;
  for (std::size_t tau = 0; tau < group.top().size(); ++tau) {
    out.push_back(act_character(group, tau, canon));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::uint64_t min_dim_for_block(const WreathGroup &group, std::size_t block) {
  if (group.variant() != WreathVariant::GL) {
    throw std::invalid_argument("min_dim_for_block applies to the GL model");
  }
  if (group.m() == 0) throw std::invalid_argument("empty torus has no blocks");
  const BlockStructure bs = block_structure(group.m(), group.l());
  if (block >= bs.blocks.size()) throw std::out_of_range("block index out of range");
  std::vector<std::uint32_t> z(group.m(), 0);
  const std::uint64_t start = bs.blocks[block].start - 1;
  const auto slice = static_cast<std::uint32_t>(ipow(group.l(), group.s() - 1));
  for (std::uint64_t i = 0; i < bs.block_size(block); ++i) z[start + i] = slice;

  std::uint64_t best = 0;
  for (std::uint64_t i = 0; i < character_count(group); ++i) {
    const CharacterVector ch = character_at(group, i);
    if (pairing(group, ch.b, z) == 0) continue;
    const std::uint64_t dim = theta_dim(ch, group);
    if (best == 0 || dim < best) best = dim;
  }
  if (best == 0) throw InternalError("no character is nontrivial on the block slice");
  return best;
}

FaithfulResult min_faithful_dim(const WreathGroup &group, std::uint64_t budget) {
  Sweep sw = sweep(group, budget);
  FaithfulResult result;
  result.center_rank = sw.rank;
  result.abelian = sw.abelian;
  SpanZl span(group.l(), sw.rank);
  for (const auto &c : sw.candidates) {
    if (span.rank() == sw.rank) break;
    if (span.insert(c.u)) {
      result.witnesses.push_back({c.ch, c.dim, 0});
      result.dim += c.dim;
    }
  }
  if (span.rank() != sw.rank) throw InternalError("characters do not span the socle dual");
  certify(group, result, budget);
  return result;
}

FaithfulResult min_faithful_dim_exhaustive(const WreathGroup &group, std::uint64_t budget) {
  Sweep sw = sweep(group, budget);
  const std::size_t r = sw.rank;
  // Every character with the same restriction and dimension is interchangeable
  // here, so one per (u, dim) class suffices; sweep() already keeps the
  // lightest, and heavier ones never improve a sum.
  const auto &cands = sw.candidates;
  FaithfulResult result;
  result.center_rank = sw.rank;
  result.abelian = sw.abelian;
  if (r == 0) {
    result.certified = is_faithful({}, group, budget);
    return result;
  }
  std::uint64_t combos = 1;
  for (std::size_t i = 0; i < r; ++i) {
    combos = combos * (cands.size() - i) / (i + 1);
    if (combos > (std::uint64_t{1} << 26)) throw BudgetExceeded("too many r-subsets");
  }
  std::vector<std::size_t> pick(r), best_pick;
  std::uint64_t best = 0;
  std::function<void(std::size_t, std::size_t, std::uint64_t)> rec =
      [&](std::size_t from, std::size_t depth, std::uint64_t sum) {
        if (depth == r) {
          SpanZl span(group.l(), r);
          for (auto i : pick) {
            if (!span.insert(cands[i].u)) return;
          }
          if (best_pick.empty() || sum < best) {
            best = sum;
            best_pick = pick;
          }
          return;
        }
        for (std::size_t i = from; i < cands.size(); ++i) {
          pick[depth] = i;
          rec(i + 1, depth + 1, sum + cands[i].dim);
        }
      };
  rec(0, 0, 0);
  if (best_pick.empty()) throw InternalError("characters do not span the socle dual");
  result.dim = best;
  for (auto i : best_pick) result.witnesses.push_back({cands[i].ch, cands[i].dim, 0});
  certify(group, result, budget);
  return result;
}

std::vector<std::uint64_t> kernel_of_theta(const CharacterVector &b, const WreathGroup &group,
                                           std::uint64_t budget) {
  check_budget(group, budget);
  const Prepared p = prepare(group, b);
  const std::size_t k = group.top().size();
  std::vector<std::uint64_t> out;
  for (std::uint64_t x = 0; x < group.order(); ++x) {
    if (in_kernel(group, p, group.element(x), x % k)) out.push_back(x);
  }
  return out;
}

bool is_faithful(const std::vector<CharacterVector> &chars, const WreathGroup &group,
                 std::uint64_t budget) {
  check_budget(group, budget);
  std::vector<Prepared> prepared;
  for (const auto &ch : chars) prepared.push_back(prepare(group, ch));
  const std::size_t k = group.top().size();
  const std::uint64_t e = group.id(group.identity());
  for (std::uint64_t x = 0; x < group.order(); ++x) {
    if (x == e) continue;
    const WreathElement g = group.element(x);
    bool in_all = true;
    for (const auto &p : prepared) {
      if (!in_kernel(group, p, g, x % k)) {
        in_all = false;
        break;
      }
    }
    if (in_all) return false;
  }
  return true;
}

nlohmann::ordered_json witness_to_json(const WreathGroup &group, const FaithfulResult &result) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["group"] = {{"l", group.l()},
                {"s", group.s()},
                {"m", group.m()},
                {"variant", to_string(group.variant())},
                {"order", group.order()}};
  j["dimension"] = result.dim;
  j["center_rank"] = result.center_rank;
  j["abelian"] = result.abelian;
  j["certified"] = result.certified;
  nlohmann::ordered_json ws = nlohmann::ordered_json::array();
  for (const auto &w : result.witnesses) {
    nlohmann::ordered_json e;
    e["b"] = w.b.b;
    if (!w.b.lambda.empty()) {
      e["lambda"] = w.b.lambda;
      e["lambda_modulus"] = w.b.lambda_modulus;
    }
    e["dim"] = w.dim;
    e["kernel_size"] = w.kernel_size;
    ws.push_back(e);
  }
  j["witnesses"] = ws;
  return j;
}

}  // namespace essdim
