#include "essdim/wreath.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "essdim/error.hpp"
#include "essdim/numth.hpp"

namespace essdim {

std::string to_string(WreathVariant v) {
  switch (v) {
    case WreathVariant::GL:
      return "GL";
    case WreathVariant::SL:
      return "SL";
    case WreathVariant::PSLCase1:
      return "PSL_case1";
    case WreathVariant::PSLCase2:
      return "PSL_case2";
  }
  return "unknown";
}

WreathGroup::WreathGroup(std::uint64_t l, unsigned s, std::size_t m, WreathVariant variant,
                         unsigned t)
    : l_(l), s_(s), m_(m), variant_(variant), t_(t) {
  require_prime(l, "l");
  if (s == 0) throw std::invalid_argument("s must be positive");
  mod_ = ipow(l, s);
  if (variant == WreathVariant::PSLCase1 || variant == WreathVariant::PSLCase2) {
    c_ = std::min(s, t);
  }
  last_mod_ = ipow(l, s - c_);
  if (!sum_zero()) {
    for (std::size_t i = 0; i < m; ++i) torus_size_ *= mod_;
  } else if (m >= 2) {
    for (std::size_t i = 0; i + 2 < m; ++i) torus_size_ *= mod_;
    torus_size_ *= last_mod_;
  }

  top_gens_ = build_pl_sn(m, l);
  top_ = enumerate_perm_group(top_gens_, m);
  std::sort(top_.begin(), top_.end());
  const std::size_t k = top_.size();
  std::unordered_map<Perm, std::size_t, PermHash> index;
  for (std::size_t i = 0; i < k; ++i) index.emplace(top_[i], i);
  top_mul_.resize(k * k);
  top_inv_.resize(k);
  for (std::size_t a = 0; a < k; ++a) {
    top_inv_[a] = index.at(top_[a].inverse());
    for (std::size_t b = 0; b < k; ++b) top_mul_[a * k + b] = index.at(top_[a] * top_[b]);
  }
}

std::size_t WreathGroup::top_index(const Perm &p) const {
  auto it = std::lower_bound(top_.begin(), top_.end(), p);
  if (it == top_.end() || *it != p) throw std::invalid_argument("permutation is not in P_l(S_m)");
  return static_cast<std::size_t>(it - top_.begin());
}

std::vector<std::uint32_t> WreathGroup::canonical(std::vector<std::uint32_t> v) const {
  if (v.size() != m_) throw std::invalid_argument("vector length mismatch");
  for (auto &x : v) x = static_cast<std::uint32_t>(x % mod_);
  if (!sum_zero() || m_ == 0) return v;
  std::uint64_t total = 0;
  for (auto x : v) total += x;
  if (total % mod_ != 0) throw std::invalid_argument("torus vector does not sum to zero");
  const std::uint64_t shift = v[m_ - 1] - v[m_ - 1] % last_mod_;
  if (shift) {
    for (auto &x : v) x = static_cast<std::uint32_t>((x + mod_ - shift) % mod_);
  }
  return v;
}

std::uint64_t WreathGroup::torus_index(const std::vector<std::uint32_t> &v) const {
  std::uint64_t idx = 0;
  if (!sum_zero()) {
    for (std::size_t i = m_; i-- > 0;) idx = idx * mod_ + v[i];
    return idx;
  }
  if (m_ < 2) return 0;
  idx = v[m_ - 1];
  for (std::size_t i = m_ - 2; i-- > 0;) idx = idx * mod_ + v[i];
  return idx;
}

std::vector<std::uint32_t> WreathGroup::torus_vector(std::uint64_t index) const {
  std::vector<std::uint32_t> v(m_, 0);
  if (!sum_zero()) {
    for (std::size_t i = 0; i < m_; ++i) {
      v[i] = static_cast<std::uint32_t>(index % mod_);
      index /= mod_;
    }
    return v;
  }
  if (m_ < 2) return v;
  std::uint64_t total = 0;
  for (std::size_t i = 0; i + 2 < m_; ++i) {
    v[i] = static_cast<std::uint32_t>(index % mod_);
    total += v[i];
    index /= mod_;
  }
  v[m_ - 1] = static_cast<std::uint32_t>(index);
  total += v[m_ - 1];
  v[m_ - 2] = static_cast<std::uint32_t>((mod_ - total % mod_) % mod_);
  return v;
}

std::vector<std::uint32_t> WreathGroup::act(std::size_t tau,
                                            const std::vector<std::uint32_t> &v) const {
  const Perm &p = top_[tau];
  std::vector<std::uint32_t> out(m_);
  for (std::size_t i = 0; i < m_; ++i) out[p(i)] = v[i];
  return out;
}

std::uint64_t WreathGroup::id(const WreathElement &g) const {
  return torus_index(canonical(g.v)) * top_.size() + top_index(g.tau);
}

WreathElement WreathGroup::element(std::uint64_t id) const {
  const std::size_t k = top_.size();
  return {torus_vector(id / k), top_[id % k]};
}

WreathElement WreathGroup::identity() const { return {std::vector<std::uint32_t>(m_, 0), Perm(m_)}; }

WreathElement WreathGroup::multiply(const WreathElement &g, const WreathElement &h) const {
  const std::size_t tg = top_index(g.tau);
  std::vector<std::uint32_t> v = act(tg, h.v);
  for (std::size_t i = 0; i < m_; ++i) v[i] = static_cast<std::uint32_t>((v[i] + g.v[i]) % mod_);
  return {canonical(std::move(v)), g.tau * h.tau};
}

WreathElement WreathGroup::inverse(const WreathElement &g) const {
  const std::size_t ti = top_inv(top_index(g.tau));
  std::vector<std::uint32_t> v = act(ti, g.v);
  for (auto &x : v) x = static_cast<std::uint32_t>((mod_ - x) % mod_);
  return {canonical(std::move(v)), top_[ti]};
}

WreathElement WreathGroup::power(const WreathElement &g, std::uint64_t e) const {
  WreathElement acc = identity();
  for (std::uint64_t i = 0; i < e; ++i) acc = multiply(acc, g);
  return acc;
}

std::uint64_t WreathGroup::multiply(std::uint64_t g, std::uint64_t h) const {
  const std::size_t k = top_.size();
  const std::size_t tg = g % k;
  std::vector<std::uint32_t> v = act(tg, torus_vector(h / k));
  const std::vector<std::uint32_t> a = torus_vector(g / k);
  for (std::size_t i = 0; i < m_; ++i) v[i] = static_cast<std::uint32_t>((v[i] + a[i]) % mod_);
  return torus_index(canonical(std::move(v))) * k + top_mul(tg, h % k);
}

std::uint64_t WreathGroup::inverse(std::uint64_t g) const { return id(inverse(element(g))); }

std::vector<WreathElement> WreathGroup::generators() const {
  std::vector<WreathElement> gens;
  if (!sum_zero()) {
    for (std::size_t i = 0; i < m_; ++i) {
      WreathElement e = identity();
      e.v[i] = 1;
      gens.push_back(e);
    }
  } else {
    for (std::size_t i = 0; i + 1 < m_; ++i) {
      WreathElement e = identity();
      e.v[i] = 1;
      e.v[i + 1] = static_cast<std::uint32_t>(mod_ - 1);
      e.v = canonical(e.v);
      gens.push_back(e);
    }
  }
  for (const Perm &sigma : top_gens_) gens.push_back({std::vector<std::uint32_t>(m_, 0), sigma});
  return gens;
}

std::vector<std::uint32_t> WreathGroup::coordinates(const WreathElement &g) const {
  if (!sum_zero()) return g.v;
  std::vector<std::uint32_t> b;
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i + 1 < m_; ++i) {
    acc = (acc + g.v[i]) % mod_;
    b.push_back(static_cast<std::uint32_t>(acc));
  }
  return b;
}

nlohmann::ordered_json WreathGroup::to_json(const WreathElement &g) const {
  nlohmann::ordered_json j;
  j["b"] = coordinates(g);
  j["torus"] = g.v;
  j["tau"] = g.tau.images_one_based();
  return j;
}

WreathGroup make_group(std::uint64_t l, unsigned s, std::size_t m, WreathVariant variant, int t) {
  require_prime(l, "l");
  unsigned tv = 0;
  if (variant == WreathVariant::PSLCase1 || variant == WreathVariant::PSLCase2) {
    if (m == 0) throw std::invalid_argument("PSL variants need n >= 1");
    tv = t < 0 ? nu(l, m) : static_cast<unsigned>(t);
    if (tv == 0) throw std::invalid_argument("PSL variants need l | n");
    if (variant == WreathVariant::PSLCase1 && s > tv) {
      throw std::invalid_argument("PSL case 1 needs s <= t");
    }
    if (variant == WreathVariant::PSLCase2 && s <= tv) {
      throw std::invalid_argument("PSL case 2 needs s > t");
    }
    if (t >= 0 && nu(l, m) < tv) throw std::invalid_argument("t exceeds nu_l(n)");
  }
  return WreathGroup(l, s, m, variant, tv);
}

CenterInfo center(const WreathGroup &group, std::uint64_t budget) {
  if (group.order() > budget) {
    throw BudgetExceeded("group of order " + std::to_string(group.order()) +
                         " exceeds the enumeration budget");
  }
  std::vector<std::uint64_t> gens;
  for (const auto &g : group.generators()) gens.push_back(group.id(g));
  CenterInfo info;
  for (std::uint64_t z = 0; z < group.order(); ++z) {
    bool central = true;
    for (std::uint64_t g : gens) {
      if (group.multiply(g, z) != group.multiply(z, g)) {
        central = false;
        break;
      }
    }
    if (central) info.elements.push_back(z);
  }
  info.order = info.elements.size();

  // Count solutions of z^{l^k} = 1 to read off the cyclic factors.
  const std::uint64_t identity = group.id(group.identity());
  std::vector<std::uint64_t> current = info.elements;
  std::vector<std::uint64_t> killed{1};
  std::uint64_t k_total = 0;
  while (killed.back() < info.order) {
    std::uint64_t count = 0;
    for (auto &z : current) {
      std::uint64_t acc = identity;
      for (std::uint64_t i = 0; i < group.l(); ++i) acc = group.multiply(acc, z);
      z = acc;
    }
    for (auto z : current) count += z == identity;
    killed.push_back(count);
    if (++k_total > 64) throw InternalError("center exponent search did not terminate");
  }
  std::vector<unsigned> at_least;  // factors of order >= l^k
  for (std::size_t k = 1; k < killed.size(); ++k) {
    std::uint64_t ratio = killed[k] / killed[k - 1];
    unsigned e = 0;
    while (ratio > 1) {
      ratio /= group.l();
      ++e;
    }
    at_least.push_back(e);
  }
  info.rank = at_least.empty() ? 0 : at_least[0];
  for (std::size_t k = 0; k < at_least.size(); ++k) {
    const unsigned next = k + 1 < at_least.size() ? at_least[k + 1] : 0;
    for (unsigned c = 0; c < at_least[k] - next; ++c) info.invariants.push_back(static_cast<unsigned>(k + 1));
  }
  std::sort(info.invariants.rbegin(), info.invariants.rend());
  return info;
}

std::vector<std::uint64_t> socle(const WreathGroup &group, const CenterInfo &center) {
  const std::uint64_t identity = group.id(group.identity());
  std::vector<std::uint64_t> out;
  for (auto z : center.elements) {
    std::uint64_t acc = identity;
    for (std::uint64_t i = 0; i < group.l(); ++i) acc = group.multiply(acc, z);
    if (acc == identity) out.push_back(z);
  }
  return out;
}

std::vector<std::uint64_t> socle(const WreathGroup &group, std::uint64_t budget) {
  return socle(group, center(group, budget));
}

unsigned predicted_center_rank(const WreathGroup &group) {
  if (group.m() == 0) return 0;
  const unsigned digits = static_cast<unsigned>(digit_sum(group.m(), group.l()));
  return group.sum_zero() ? digits - 1 : digits;
}

bool is_abelian(const WreathGroup &group) {
  const auto gens = group.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      if (group.multiply(gens[i], gens[j]) != group.multiply(gens[j], gens[i])) return false;
    }
  }
  return true;
}

nlohmann::ordered_json center_to_json(const WreathGroup &group, const CenterInfo &center) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["group"] = {{"l", group.l()},
                {"s", group.s()},
                {"m", group.m()},
                {"variant", to_string(group.variant())},
                {"order", group.order()}};
  j["center_order"] = center.order;
  j["center_rank"] = center.rank;
  j["invariants"] = center.invariants;
  nlohmann::ordered_json elems = nlohmann::ordered_json::array();
  for (auto z : center.elements) elems.push_back(group.to_json(group.element(z)));
  j["elements"] = elems;
  return j;
}

}  // namespace essdim
