#include <gtest/gtest.h>

#include <random>
#include <set>

#include "essdim/error.hpp"
#include "essdim/numth.hpp"
#include "essdim/perm.hpp"
#include "essdim/wreath.hpp"

using namespace essdim;

namespace {

std::uint64_t legendre(std::uint64_t l, std::uint64_t n) {
  std::uint64_t e = 0;
  for (std::uint64_t pw = l; pw <= n; pw *= l) e += n / pw;
  return e;
}

// |Delta| per variant, read off the presentation.
std::uint64_t torus_order(std::uint64_t l, unsigned s, std::size_t m, WreathVariant v, unsigned t) {
  std::uint64_t exponent = 0;
  switch (v) {
    case WreathVariant::GL:
      exponent = s * m;
      break;
    case WreathVariant::SL:
      exponent = s * (m - 1);
      break;
    case WreathVariant::PSLCase1:
      exponent = s * (m - 2);
      break;
    case WreathVariant::PSLCase2:
      exponent = s * (m - 2) + (s - t);
      break;
  }
  return ipow(l, static_cast<unsigned>(exponent));
}

WreathElement unit(const WreathGroup &g, std::size_t i) {
  WreathElement e = g.identity();
  e.v[i] = 1;
  return e;
}

}  // namespace

TEST(Perm, BuildExamples) {
  auto a = build_pl_sn(3, 3);
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(a[0].cycles(), "(1 2 3)");
  EXPECT_EQ(enumerate_perm_group(a, 3).size(), 3u);

  auto b = build_pl_sn(4, 2);
  ASSERT_EQ(b.size(), 3u);
  EXPECT_EQ(b[0].cycles(), "(1 2)");
  EXPECT_EQ(b[1].cycles(), "(3 4)");
  EXPECT_EQ(b[2].cycles(), "(1 3)(2 4)");
  EXPECT_EQ(enumerate_perm_group(b, 4).size(), 8u);

  EXPECT_TRUE(build_pl_sn(2, 3).empty());
  EXPECT_EQ(enumerate_perm_group({}, 2).size(), 1u);
}

TEST(Perm, LegendreClosure) {
  for (auto l : {2ULL, 3ULL, 5ULL}) {
    for (std::size_t n = 1; n <= 12; ++n) {
      const auto gens = build_pl_sn(n, l);
      const auto elems = enumerate_perm_group(gens, n);
      EXPECT_EQ(elems.size(), ipow(l, static_cast<unsigned>(legendre(l, n)))) << n << " " << l;
      EXPECT_TRUE(elems.front().is_identity());
    }
  }
}

TEST(Perm, GroupLaw) {
  Perm a(std::vector<std::uint32_t>{1, 2, 0});
  Perm b(std::vector<std::uint32_t>{1, 0, 2});
  EXPECT_EQ((a * b)(0), a(b(0)));
  EXPECT_TRUE((a * a.inverse()).is_identity());
  EXPECT_EQ(a.sign(), 1);
  EXPECT_EQ(b.sign(), -1);
  EXPECT_EQ(a.images_one_based(), (std::vector<std::uint32_t>{2, 3, 1}));
}

TEST(Wreath, MakeGroupOrders) {
  EXPECT_EQ(make_group(3, 1, 3, WreathVariant::GL).order(), 81u);
  EXPECT_EQ(make_group(2, 2, 2, WreathVariant::SL).order(), 8u);
  EXPECT_EQ(make_group(3, 1, 3, WreathVariant::PSLCase1).order(), 9u);
}

TEST(Wreath, MakeGroupRejectsInconsistentVariants) {
  EXPECT_THROW(make_group(3, 1, 4, WreathVariant::PSLCase1), std::invalid_argument);
  EXPECT_THROW(make_group(3, 1, 3, WreathVariant::PSLCase2), std::invalid_argument);
  EXPECT_THROW(make_group(3, 2, 3, WreathVariant::PSLCase1), std::invalid_argument);
  EXPECT_THROW(make_group(4, 1, 3, WreathVariant::GL), std::invalid_argument);
  EXPECT_NO_THROW(make_group(3, 2, 3, WreathVariant::PSLCase2));
  EXPECT_NO_THROW(make_group(2, 2, 6, WreathVariant::PSLCase2, 1));
}

TEST(Wreath, OrdersMatchPresentation) {
  for (auto l : {2ULL, 3ULL, 5ULL}) {
    for (unsigned s = 1; s <= 3; ++s) {
      for (std::size_t m = 1; m <= 7; ++m) {
        for (auto v : {WreathVariant::GL, WreathVariant::SL, WreathVariant::PSLCase1,
                       WreathVariant::PSLCase2}) {
          const unsigned t = nu(l, m);
          if (v == WreathVariant::SL && m < 2) continue;
          if (v == WreathVariant::PSLCase1 && (t == 0 || s > t || m < 2)) continue;
          if (v == WreathVariant::PSLCase2 && (t == 0 || s <= t || m < 2)) continue;
          const auto g = make_group(l, s, m, v);
          const std::uint64_t expect =
              torus_order(l, s, m, v, t) * ipow(l, static_cast<unsigned>(legendre(l, m)));
          EXPECT_EQ(g.order(), expect) << l << " " << s << " " << m << " " << to_string(v);
        }
      }
    }
  }
}

TEST(Wreath, MultiplyExamples) {
  const auto g = make_group(3, 1, 3, WreathVariant::GL);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20; ++i) {
    const auto x = g.element(rng() % g.order());
    EXPECT_EQ(g.multiply(x, g.identity()), x);
    EXPECT_EQ(g.multiply(g.identity(), x), x);
  }
  const auto e1 = unit(g, 0), e2 = unit(g, 1);
  const auto sum = g.multiply(e1, e2);
  EXPECT_EQ(sum.v, (std::vector<std::uint32_t>{1, 1, 0}));
  EXPECT_TRUE(sum.tau.is_identity());

  const Perm sigma = build_pl_sn(3, 3)[0];  // (1 2 3)
  const WreathElement top{{0, 0, 0}, sigma};
  const auto prod = g.multiply(top, e1);
  std::vector<std::uint32_t> expect(3, 0);
  expect[sigma(0)] = 1;
  EXPECT_EQ(prod.v, expect);
  EXPECT_EQ(prod.tau, sigma);
}

TEST(Wreath, GroupLawProperties) {
  std::mt19937_64 rng(12345);
  const std::vector<WreathGroup> groups{
      make_group(2, 2, 4, WreathVariant::GL), make_group(3, 1, 6, WreathVariant::SL),
      make_group(2, 2, 4, WreathVariant::PSLCase1), make_group(2, 3, 4, WreathVariant::PSLCase2),
      make_group(3, 2, 3, WreathVariant::PSLCase2), make_group(5, 1, 5, WreathVariant::GL)};
  for (const auto &g : groups) {
    const auto e = g.id(g.identity());
    for (int i = 0; i < 300; ++i) {
      const auto a = rng() % g.order(), b = rng() % g.order(), c = rng() % g.order();
      EXPECT_EQ(g.multiply(g.multiply(a, b), c), g.multiply(a, g.multiply(b, c)));
      EXPECT_EQ(g.multiply(a, g.inverse(a)), e);
      EXPECT_EQ(g.multiply(g.inverse(a), a), e);
      EXPECT_EQ(g.id(g.element(a)), a);
      EXPECT_EQ(g.id(g.multiply(g.element(a), g.element(b))), g.multiply(a, b));
    }
  }
}

TEST(Wreath, IdsEnumerateDistinctCanonicalElements) {
  const auto g = make_group(2, 2, 4, WreathVariant::PSLCase1);
  std::set<std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>> seen;
  for (std::uint64_t x = 0; x < g.order(); ++x) {
    const auto el = g.element(x);
    EXPECT_EQ(g.canonical(el.v), el.v);
    seen.insert({el.v, el.tau.images()});
  }
  EXPECT_EQ(seen.size(), g.order());
}

TEST(Wreath, GeneratorsGenerate) {
  for (const auto &g : {make_group(3, 1, 3, WreathVariant::SL), make_group(2, 2, 4, WreathVariant::GL),
                        make_group(2, 3, 4, WreathVariant::PSLCase2)}) {
    std::vector<std::uint64_t> gens;
    for (const auto &x : g.generators()) gens.push_back(g.id(x));
    std::set<std::uint64_t> seen{g.id(g.identity())};
    std::vector<std::uint64_t> frontier(seen.begin(), seen.end());
    while (!frontier.empty()) {
      std::vector<std::uint64_t> next;
      for (auto x : frontier) {
        for (auto s : gens) {
          const auto y = g.multiply(s, x);
          if (seen.insert(y).second) next.push_back(y);
        }
      }
      frontier = std::move(next);
    }
    EXPECT_EQ(seen.size(), g.order());
  }
}

TEST(Wreath, SlRelationWord) {
  for (auto [l, s, m] : std::vector<std::tuple<std::uint64_t, unsigned, std::size_t>>{
           {3, 1, 3}, {2, 2, 4}, {5, 1, 5}, {3, 2, 4}}) {
    const auto g = make_group(l, s, m, WreathVariant::SL);
    const auto gens = g.generators();
    WreathElement word = g.identity();
    for (std::size_t i = 0; i + 1 < m; ++i) {
      word = g.multiply(word, g.power(gens[i], g.modulus() - 1));
    }
    // E_n = e_n - e_1
    std::vector<std::uint32_t> en(m, 0);
    en[m - 1] = 1;
    en[0] = static_cast<std::uint32_t>(g.modulus() - 1);
    EXPECT_EQ(word.v, g.canonical(en));
    EXPECT_TRUE(word.tau.is_identity());
    EXPECT_NE(word, g.identity());
    // Reduced coordinates of E_n are all l^s - 1.
    EXPECT_EQ(g.coordinates(word),
              std::vector<std::uint32_t>(m - 1, static_cast<std::uint32_t>(g.modulus() - 1)));
  }
}

TEST(Wreath, CenterExamples) {
  {
    const auto g = make_group(3, 1, 3, WreathVariant::GL);
    const auto c = center(g);
    EXPECT_EQ(c.order, 3u);
    EXPECT_EQ(c.rank, 1u);
    for (auto z : c.elements) {
      const auto el = g.element(z);
      EXPECT_TRUE(el.tau.is_identity());
      EXPECT_EQ(el.v[0], el.v[1]);
      EXPECT_EQ(el.v[1], el.v[2]);
    }
    EXPECT_EQ(socle(g, c).size(), 3u);
  }
  {
    const auto g = make_group(5, 2, 1, WreathVariant::GL);
    EXPECT_EQ(center(g).order, g.order());
    EXPECT_EQ(center(g).invariants, (std::vector<unsigned>{2}));
  }
  {
    const auto g = make_group(2, 2, 2, WreathVariant::GL);
    const auto c = center(g);
    EXPECT_EQ(c.order, 4u);
    EXPECT_EQ(c.rank, 1u);
    const auto soc = socle(g, c);
    std::set<std::vector<std::uint32_t>> vs;
    for (auto z : soc) vs.insert(g.element(z).v);
    EXPECT_EQ(vs, (std::set<std::vector<std::uint32_t>>{{0, 0}, {2, 2}}));
  }
  {
    const auto g = make_group(3, 1, 0, WreathVariant::GL);
    EXPECT_EQ(g.order(), 1u);
    EXPECT_EQ(socle(g).size(), 1u);
  }
}

TEST(Wreath, CenterMatchesBruteForce) {
  for (const auto &g : {make_group(2, 1, 4, WreathVariant::GL), make_group(3, 1, 3, WreathVariant::SL),
                        make_group(2, 2, 4, WreathVariant::PSLCase1),
                        make_group(2, 2, 3, WreathVariant::SL)}) {
    std::vector<std::uint64_t> brute;
    for (std::uint64_t z = 0; z < g.order(); ++z) {
      bool central = true;
      for (std::uint64_t x = 0; x < g.order() && central; ++x) {
        central = g.multiply(x, z) == g.multiply(z, x);
      }
      if (central) brute.push_back(z);
    }
    EXPECT_EQ(center(g).elements, brute);
  }
}

TEST(Wreath, GlCenterRankIsDigitSum) {
  for (auto l : {2ULL, 3ULL, 5ULL}) {
    for (unsigned s = 1; s <= 3; ++s) {
      for (std::size_t m = 1; m <= 8; ++m) {
        const auto g = make_group(l, s, m, WreathVariant::GL);
        if (g.order() > (1u << 18)) continue;
        const auto c = center(g);
        EXPECT_EQ(c.rank, digit_sum(m, l)) << l << " " << s << " " << m;
        EXPECT_EQ(c.rank, predicted_center_rank(g));
        EXPECT_EQ(socle(g, c).size(), ipow(l, c.rank));
        // (Z/l^s)^{rank}
        EXPECT_EQ(c.invariants, std::vector<unsigned>(c.rank, s));
      }
    }
  }
}

TEST(Wreath, BudgetEnforced) {
  const auto g = make_group(2, 3, 6, WreathVariant::GL);
  EXPECT_THROW(center(g, 1000), BudgetExceeded);
}

TEST(Wreath, Json) {
  const auto g = make_group(3, 1, 3, WreathVariant::SL);
  const auto j = center_to_json(g, center(g));
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(j["center_order"], 3);
  EXPECT_TRUE(j["elements"][0].contains("tau"));
}

TEST(Wreath, AbelianDetection) {
  EXPECT_TRUE(is_abelian(make_group(3, 1, 2, WreathVariant::GL)));
  EXPECT_FALSE(is_abelian(make_group(3, 1, 3, WreathVariant::GL)));
  EXPECT_TRUE(is_abelian(make_group(3, 1, 3, WreathVariant::PSLCase1)));
}
