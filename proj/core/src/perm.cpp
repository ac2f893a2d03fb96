#include "essdim/perm.hpp"

#include <deque>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "essdim/error.hpp"
#include "essdim/numth.hpp"

namespace essdim {

Perm::Perm(std::size_t n) : images_(n) { std::iota(images_.begin(), images_.end(), 0u); }

Perm::Perm(std::vector<std::uint32_t> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (auto x : images_) {
    if (x >= images_.size() || seen[x]) throw std::invalid_argument("not a permutation");
    seen[x] = true;
  }
}

Perm Perm::operator*(const Perm &other) const {
  if (size() != other.size()) throw std::invalid_argument("permutation size mismatch");
  Perm out;
  out.images_.resize(size());
  for (std::size_t i = 0; i < size(); ++i) out.images_[i] = images_[other.images_[i]];
  return out;
}

Perm Perm::inverse() const {
  Perm out;
  out.images_.resize(size());
  for (std::size_t i = 0; i < size(); ++i) out.images_[images_[i]] = static_cast<std::uint32_t>(i);
  return out;
}

bool Perm::is_identity() const {
  for (std::size_t i = 0; i < size(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

int Perm::sign() const {
  std::vector<bool> seen(size(), false);
  int s = 1;
  for (std::size_t i = 0; i < size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) s = -s;
  }
  return s;
}

std::vector<std::uint32_t> Perm::images_one_based() const {
  std::vector<std::uint32_t> out(images_);
  for (auto &x : out) ++x;
  return out;
}

std::string Perm::cycles() const {
  std::ostringstream os;
  std::vector<bool> seen(size(), false);
  for (std::size_t i = 0; i < size(); ++i) {
    if (seen[i] || images_[i] == i) continue;
    os << "(";
    bool first = true;
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      os << (first ? "" : " ") << j + 1;
      first = false;
    }
    os << ")";
  }
  std::string s = os.str();
  return s.empty() ? "()" : s;
}

std::size_t PermHash::operator()(const Perm &p) const {
  std::size_t h = 1469598103934665603ull;
  for (auto x : p.images()) h = (h ^ x) * 1099511628211ull;
  return h;
}

std::vector<Perm> build_pl_sn(std::size_t n, std::uint64_t l) {
  require_prime(l, "l");
  std::vector<Perm> gens;
  if (n < l) return gens;
  const unsigned top = mu(l, n);
  for (unsigned j = 1; j <= top; ++j) {
    const std::size_t window = ipow(l, j);
    const std::size_t block = window / l;
    for (std::size_t i = 0; i < n / window; ++i) {
      std::vector<std::uint32_t> images(n);
      std::iota(images.begin(), images.end(), 0u);
      const std::size_t base = i * window;
      for (std::size_t t = 0; t < l; ++t) {
        for (std::size_t u = 0; u < block; ++u) {
          images[base + t * block + u] =
              static_cast<std::uint32_t>(base + ((t + 1) % l) * block + u);
        }
      }
      gens.emplace_back(std::move(images));
    }
  }
  return gens;
}

std::vector<Perm> enumerate_perm_group(const std::vector<Perm> &gens, std::size_t n,
                                       std::size_t budget) {
  std::vector<Perm> elements{Perm(n)};
  std::unordered_set<Perm, PermHash> seen{Perm(n)};
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (const Perm &g : gens) {
      Perm next = elements[head] * g;
      if (seen.insert(next).second) {
        if (elements.size() >= budget) throw BudgetExceeded("permutation group exceeds budget");
        elements.push_back(std::move(next));
      }
    }
  }
  return elements;
}

}  // namespace essdim
