#include <gtest/gtest.h>

#include <set>

#include "essdim/classical.hpp"
#include "essdim/error.hpp"
#include "essdim/formulas.hpp"
#include "essdim/gf_field.hpp"
#include "essdim/gf_matrix.hpp"

using namespace essdim;
using namespace essdim::gf;

namespace {

// Polynomial product mod (p, f) on coefficient vectors, independent of the
// log tables.
std::vector<std::uint64_t> poly_mulmod(const std::vector<std::uint64_t> &a,
                                       const std::vector<std::uint64_t> &b,
                                       const std::vector<std::uint64_t> &f, std::uint64_t p) {
  const std::size_t r = f.size() - 1;
  std::vector<std::uint64_t> prod(2 * r, 0);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  }
  for (std::size_t k = prod.size(); k-- > r;) {
    const std::uint64_t c = prod[k];
    if (!c) continue;
    for (std::size_t i = 0; i <= r; ++i) {
      prod[k - r + i] = (prod[k - r + i] + (p - c) * f[i]) % p;
    }
  }
  prod.resize(r);
  return prod;
}

BigInt naive_gl_order(std::uint64_t n, std::uint64_t q) {
  BigInt out = 1, qn = big_pow(q, static_cast<unsigned>(n));
  for (std::uint64_t i = 0; i < n; ++i) out *= qn - big_pow(q, static_cast<unsigned>(i));
  return out;
}

}  // namespace

TEST(Field, Moduli) {
  auto f4 = make_field(2, 2);
  EXPECT_EQ(f4->modulus(), (std::vector<std::uint64_t>{1, 1, 1}));
  auto f5 = make_field(5, 1);
  EXPECT_EQ(f5->modulus(), (std::vector<std::uint64_t>{0, 1}));
  // Least irreducible monic quadratic over F_3: x^2 + 1 (x^2 has root 0,
  // x^2 + 1 has none).
  auto f9 = make_field(3, 2);
  EXPECT_EQ(f9->modulus(), (std::vector<std::uint64_t>{1, 0, 1}));
  EXPECT_THROW(make_field(4, 1), std::invalid_argument);
}

TEST(Field, ModulusIsLeastIrreducible) {
  for (auto [p, r] : std::vector<std::pair<std::uint64_t, unsigned>>{
           {2, 3}, {2, 4}, {3, 2}, {3, 3}, {5, 2}, {7, 2}, {2, 6}}) {
    auto f = make_field(p, r);
    EXPECT_TRUE(is_irreducible(f->modulus(), p));
    // No smaller code is irreducible.
    std::uint64_t code = 0;
    for (std::size_t i = r; i-- > 0;) code = code * p + f->modulus()[i];
    for (std::uint64_t c = 0; c < code; ++c) {
      std::vector<std::uint64_t> poly(r + 1, 0);
      poly[r] = 1;
      std::uint64_t x = c;
      for (unsigned i = 0; i < r; ++i) {
        poly[i] = x % p;
        x /= p;
      }
      EXPECT_FALSE(is_irreducible(poly, p)) << c;
    }
  }
}

TEST(Field, ArithmeticMatchesPolynomials) {
  for (auto [p, r] : std::vector<std::pair<std::uint64_t, unsigned>>{{2, 3}, {3, 2}, {5, 2}, {7, 1}}) {
    auto f = make_field(p, r);
    for (Elem a = 0; a < f->q(); ++a) {
      for (Elem b = 0; b < f->q(); ++b) {
        const auto prod = poly_mulmod(f->coefficients(a), f->coefficients(b), f->modulus(), p);
        EXPECT_EQ(f->coefficients(f->mul(a, b)), prod);
        auto ca = f->coefficients(a), cb = f->coefficients(b), cs = f->coefficients(f->add(a, b));
        for (unsigned i = 0; i < r; ++i) EXPECT_EQ(cs[i], (ca[i] + cb[i]) % p);
      }
      if (a) EXPECT_EQ(f->mul(a, f->inv(a)), 1u);
    }
  }
}

TEST(Field, ElementOrder) {
  auto f5 = make_field(5, 1);
  EXPECT_EQ(f5->element_order(1), 1u);
  EXPECT_EQ(f5->element_order(2), 4u);
  auto f4 = make_field(2, 2);
  EXPECT_EQ(f4->element_order(f4->generator()), 3u);
  EXPECT_THROW(f5->element_order(0), std::domain_error);
  auto f27 = make_field(3, 3);
  for (Elem a = 1; a < f27->q(); ++a) {
    const auto o = f27->element_order(a);
    EXPECT_EQ(26 % o, 0u);
    EXPECT_EQ(f27->pow(a, o), 1u);
  }
}

TEST(Field, RootOfUnity) {
  auto f5 = make_field(5, 1);
  const Elem z = root_of_unity(*f5, 4);
  EXPECT_TRUE(z == 2 || z == 3);
  EXPECT_EQ(z, root_of_unity(*make_field(5, 1), 4));
  auto f4 = make_field(2, 2);
  EXPECT_EQ(f4->element_order(root_of_unity(*f4, 3)), 3u);
  auto f7 = make_field(7, 1);
  EXPECT_EQ(root_of_unity(*f7, 2), 6u);
  EXPECT_THROW(root_of_unity(*f7, 4), std::invalid_argument);
}

TEST(Field, FrobeniusInvolution) {
  for (auto [p, r] : std::vector<std::pair<std::uint64_t, unsigned>>{{2, 2}, {3, 2}, {5, 2}, {2, 4}}) {
    auto f = make_field(p, r);
    const unsigned half = r / 2;
    for (Elem a = 0; a < f->q(); ++a) {
      EXPECT_EQ(f->frobenius(f->frobenius(a, half), half), a);
      EXPECT_EQ(f->frobenius(a, 1), f->pow(a, static_cast<std::int64_t>(p)));
    }
  }
}

TEST(Field, Embedding) {
  Embedding e(make_field(5, 1), make_field(5, 2));
  std::set<Elem> image;
  for (Elem a = 0; a < 5; ++a) {
    image.insert(e.to_big(a));
    EXPECT_EQ(e.to_small(e.to_big(a)), a);
  }
  EXPECT_EQ(image.size(), 5u);
  for (Elem a = 0; a < 25; ++a) EXPECT_TRUE(e.in_subfield(e.trace(a)));
}

TEST(Matrix, CompanionEmbed) {
  auto f5 = make_field(5, 1);
  auto f25 = make_field(5, 2);
  Embedding e(f5, f25);
  const Elem eps = root_of_unity(*f25, 3);
  const Matrix m = companion_embed(eps, e, 2);
  EXPECT_EQ(m.rows(), 2u);
  EXPECT_FALSE(m.is_identity());
  EXPECT_TRUE(m.pow(3).is_identity());
  EXPECT_EQ(m.order(100), 3u);
  EXPECT_THROW(companion_embed(eps, e, 1), std::invalid_argument);

  Embedding same(f5, f5);
  const Matrix one = companion_embed(2, same, 1);
  EXPECT_EQ(one.rows(), 1u);
  EXPECT_EQ(one.at(0, 0), 2u);
  EXPECT_EQ(one.order(100), 4u);
}

TEST(Matrix, InverseAndDet) {
  auto f7 = make_field(7, 1);
  Matrix m(f7, 3, 3);
  const Elem vals[9] = {1, 2, 3, 0, 1, 4, 5, 6, 0};
  for (int i = 0; i < 9; ++i) m.at(i / 3, i % 3) = vals[i];
  // det = 1(0-24) - 2(0-20) + 3(0-5) = 1 mod 7
  EXPECT_EQ(m.det(), 1u);
  EXPECT_TRUE((m * m.inverse()).is_identity());
  Matrix s(f7, 2, 2);
  s.at(0, 0) = 1;
  s.at(0, 1) = 2;
  s.at(1, 0) = 2;
  s.at(1, 1) = 4;
  EXPECT_EQ(s.rank(), 1u);
  EXPECT_THROW(s.inverse(), std::domain_error);
}

TEST(Forms, Membership) {
  auto f5 = make_field(5, 1);
  const auto sp = standard_form(FormKind::Symplectic, f5, 2);
  EXPECT_TRUE(form_member(Matrix::identity(f5, 2), sp, true));
  EXPECT_TRUE(form_member(Matrix::diagonal(f5, {2, 3}), sp, true));
  EXPECT_FALSE(form_member(Matrix::diagonal(f5, {2, 1}), sp, false));
  for (auto kind : {FormKind::OrthPlus, FormKind::OrthMinus, FormKind::OrthOdd}) {
    const std::size_t n = kind == FormKind::OrthOdd ? 5 : 4;
    const auto form = standard_form(kind, f5, n);
    EXPECT_EQ(form.gram, form.gram.transpose());
    EXPECT_NE(form.gram.det(), 0u);
    EXPECT_TRUE(form_member(Matrix::identity(f5, n), form, true));
  }
  auto f9 = make_field(3, 2);
  const auto h = standard_form(FormKind::Hermitian, f9, 3);
  EXPECT_EQ(h.gram.transpose(), h.gram.frobenius(h.conj));
}

TEST(Forms, MinusTypeIsAnisotropicOnThePlane) {
  // The first hyperbolic pair of the minus form is an anisotropic plane:
  // x^2 - eta y^2 = 0 only at the origin.
  for (auto p : {3ULL, 5ULL, 7ULL, 11ULL}) {
    auto f = make_field(p, 1);
    const auto form = standard_form(FormKind::OrthMinus, f, 4);
    const Elem a = form.gram.at(0, 0), b = form.gram.at(2, 2);
    EXPECT_EQ(form.gram.at(0, 2), 0u);
    for (Elem x = 0; x < p; ++x) {
      for (Elem y = 0; y < p; ++y) {
        const Elem v = f->add(f->mul(a, f->mul(x, x)), f->mul(b, f->mul(y, y)));
        if (x || y) EXPECT_NE(v, 0u);
      }
    }
  }
}

TEST(Orders, Examples) {
  EXPECT_EQ(group_order(Family{FamilyTag::GL}, 2, 3, 1), 48);
  EXPECT_EQ(group_order(Family{FamilyTag::OrthPlus}, 4, 3, 1), 1152);
  EXPECT_EQ(group_order_l_part(Family{FamilyTag::GL}, 8, 2, 1, 3), 5u);
}

TEST(Orders, NaiveGl) {
  for (auto p : {2ULL, 3ULL, 5ULL}) {
    for (unsigned r = 1; r <= 2; ++r) {
      for (std::uint64_t n = 1; n <= 6; ++n) {
        const std::uint64_t q = ipow(p, r);
        EXPECT_EQ(group_order(Family{FamilyTag::GL}, n, p, r), naive_gl_order(n, q));
        EXPECT_EQ(group_order(Family{FamilyTag::SL}, n, p, r) * (q - 1), naive_gl_order(n, q));
      }
    }
  }
}

TEST(Orders, QuotientRelations) {
  for (auto p : {2ULL, 3ULL, 5ULL, 7ULL}) {
    for (std::uint64_t n = 2; n <= 8; n += 2) {
      const std::uint64_t g = p == 2 ? 1 : 2;
      EXPECT_EQ(group_order(Family{FamilyTag::PSp}, n, p, 1) * g,
                group_order(Family{FamilyTag::Sp}, n, p, 1));
    }
    for (std::uint64_t n = 2; n <= 6; ++n) {
      const std::uint64_t q = p;
      EXPECT_EQ(group_order(Family{FamilyTag::SU}, n, p, 1) * (q + 1),
                group_order(Family{FamilyTag::U}, n, p, 1));
      const std::uint64_t g = std::gcd(n, q + 1);
      EXPECT_EQ(group_order(Family{FamilyTag::PSU}, n, p, 1) * g,
                group_order(Family{FamilyTag::SU}, n, p, 1));
      const std::uint64_t gl = std::gcd(n, q - 1);
      EXPECT_EQ(group_order(Family{FamilyTag::PSL}, n, p, 1) * gl,
                group_order(Family{FamilyTag::SL}, n, p, 1));
    }
  }
  // Known orders.
  EXPECT_EQ(group_order(Family{FamilyTag::PSL}, 2, 5, 1), 60);
  EXPECT_EQ(group_order(Family{FamilyTag::Sp}, 6, 2, 1), 1451520);
  EXPECT_EQ(group_order(Family{FamilyTag::OrthMinus}, 6, 2, 1), 51840);
  EXPECT_EQ(group_order(Family{FamilyTag::OrthPlus}, 8, 2, 1), BigInt(348364800));
  EXPECT_EQ(group_order(Family{FamilyTag::PSU}, 4, 2, 1), 25920);
}

TEST(Orders, GlLPartFormula) {
  for (auto l : {2ULL, 3ULL, 5ULL, 7ULL}) {
    for (auto p : {3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
      if (p == l || (l == 2 && p % 4 != 1)) continue;
      for (std::uint64_t n = 1; n <= 9; ++n) {
        const auto sp = sylow_params(n, p, 1, l);
        EXPECT_EQ(group_order_l_part(Family{FamilyTag::GL}, n, p, 1, l),
                  sp.s * sp.n0 + nu_factorial(l, sp.n0));
      }
    }
  }
}

TEST(Sylow, Examples) {
  const auto gl = sylow_generators(Family{FamilyTag::GL}, 2, 5, 1, 3);
  ASSERT_EQ(gl.torus.size(), 1u);
  EXPECT_TRUE(gl.permutations.empty());
  EXPECT_EQ(gl.torus[0].order(100), 3u);
  EXPECT_EQ(gl.torus[0].rows(), 2u);

  const auto sl = sylow_generators(Family{FamilyTag::SL}, 2, 5, 1, 2);
  ASSERT_FALSE(sl.torus.empty());
  EXPECT_EQ(sl.torus[0].det(), 1u);
  EXPECT_EQ(sl.torus[0].order(100), 4u);

  const auto sp = sylow_generators(Family{FamilyTag::Sp}, 4, 3, 1, 5);
  ASSERT_EQ(sp.all().size(), 1u);
  EXPECT_EQ(sp.all()[0].order(1000), 5u);
}

TEST(Sylow, GeneratorsAreLElementsAndTorusCommutes) {
  struct Case {
    FamilyTag tag;
    std::uint64_t n, p;
    unsigned r;
    std::uint64_t l;
  };
  const std::vector<Case> cases{{FamilyTag::GL, 4, 5, 1, 2},       {FamilyTag::SL, 3, 7, 1, 3},
                                {FamilyTag::Sp, 6, 2, 1, 3},       {FamilyTag::OrthPlus, 6, 5, 1, 3},
                                {FamilyTag::OrthOdd, 7, 3, 1, 5},  {FamilyTag::U, 4, 2, 1, 3},
                                {FamilyTag::SU, 3, 3, 1, 2},       {FamilyTag::OrthMinus, 8, 3, 1, 5}};
  for (const auto &c : cases) {
    const auto g = sylow_generators(Family{c.tag}, c.n, c.p, c.r, c.l);
    for (const auto &m : g.all()) {
      const auto o = m.order(1 << 16);
      ASSERT_GT(o, 0u);
      std::uint64_t x = o;
      while (x % c.l == 0) x /= c.l;
      EXPECT_EQ(x, 1u) << to_string(c.tag);
      EXPECT_TRUE(form_member(m, g.form, g.det_one));
    }
    for (const auto &a : g.torus) {
      for (const auto &b : g.torus) EXPECT_EQ(a * b, b * a);
    }
  }
}

TEST(Sylow, ClosureMatchesOrderFormula) {
  struct Case {
    FamilyTag tag;
    std::uint64_t n, p;
    unsigned r;
    std::uint64_t l;
  };
  const std::vector<Case> cases{
      {FamilyTag::GL, 2, 3, 1, 2},  // q = 3 at l = 2 is unsupported
      {FamilyTag::GL, 2, 5, 1, 2},   {FamilyTag::GL, 3, 2, 2, 3},  {FamilyTag::PSL, 3, 7, 1, 3},
      {FamilyTag::PSp, 4, 5, 1, 3},  {FamilyTag::POmegaMinus, 6, 5, 1, 3},
      {FamilyTag::PSU, 3, 5, 1, 3},  {FamilyTag::PSU, 4, 3, 1, 2}};
  for (const auto &c : cases) {
    const Family f{c.tag};
    try {
      validate(f, c.n, c.p, c.r, c.l);
    } catch (const UnsupportedCase &) {
      continue;
    }
    const auto g = sylow_generators(f, c.n, c.p, c.r, c.l);
    const auto res = closure_order(g.all(), g.scalars, 1 << 20);
    ASSERT_TRUE(res.complete);
    EXPECT_EQ(res.order, ipow(c.l, group_order_l_part(f, c.n, c.p, c.r, c.l)))
        << to_string(c.tag) << " n=" << c.n << " p=" << c.p;
  }
}

TEST(Json, MatrixDump) {
  auto f4 = make_field(2, 2);
  const auto j = matrices_to_json({{"E", Matrix::identity(f4, 2)}});
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(j["field"]["p"], 2);
  EXPECT_EQ(j["matrices"][0]["rows"], 2);
  EXPECT_EQ(j["matrices"][0]["entries"].size(), 4u);
}
