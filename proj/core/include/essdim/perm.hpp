#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace essdim {

// Permutation of {0..n-1}; printed and serialized 1-based.
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::size_t n);
  explicit Perm(std::vector<std::uint32_t> images);

  std::size_t size() const { return images_.size(); }
  std::uint32_t operator()(std::size_t i) const { return images_[i]; }
  const std::vector<std::uint32_t> &images() const { return images_; }

  // (a * b)(i) = a(b(i))
  Perm operator*(const Perm &other) const;
  bool operator==(const Perm &other) const { return images_ == other.images_; }
  bool operator!=(const Perm &other) const { return images_ != other.images_; }
  bool operator<(const Perm &other) const { return images_ < other.images_; }

  Perm inverse() const;
  bool is_identity() const;
  int sign() const;
  std::vector<std::uint32_t> images_one_based() const;
  std::string cycles() const;

 private:
  std::vector<std::uint32_t> images_;
};

struct PermHash {
  std::size_t operator()(const Perm &p) const;
};

// Generators sigma_i^j of the standard Sylow l-subgroup of S_n: for
// 1 <= j <= mu_l(n) and 1 <= i <= floor(n/l^j), cyclically permute the l
// consecutive blocks of size l^{j-1} inside the i-th window of size l^j.
std::vector<Perm> build_pl_sn(std::size_t n, std::uint64_t l);

// All elements generated by gens (identity first), breadth first.
std::vector<Perm> enumerate_perm_group(const std::vector<Perm> &gens, std::size_t n,
                                       std::size_t budget = std::size_t{1} << 22);

}  // namespace essdim
