#include "essdim/classical.hpp"

#include <algorithm>
#include <cstring>
#include <optional>
#include <stdexcept>
#include <unordered_set>

#include "essdim/error.hpp"
#include "essdim/formulas.hpp"
#include "essdim/perm.hpp"

namespace essdim::gf {

namespace {

using Vec = std::vector<Elem>;

std::uint64_t q_mod(std::uint64_t p, unsigned r, std::uint64_t m) {
  std::uint64_t x = 1 % m;
  for (unsigned i = 0; i < r; ++i) x = x * (p % m) % m;
  return x;
}

// Sesquilinear or bilinear pairing x^T G y^{(conj)}.
struct Pairing {
  const Field &f;
  const Matrix &g;
  unsigned conj;

  Elem operator()(const Vec &x, const Vec &y) const {
    const std::size_t n = x.size();
    Elem acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (y[j] == 0 || g.at(i, j) == 0) continue;
        const Elem yj = conj ? f.frobenius(y[j], conj) : y[j];
        acc = f.add(acc, f.mul(f.mul(x[i], g.at(i, j)), yj));
      }
    }
    return acc;
  }
};

Vec axpy(const Field &f, const Vec &y, Elem a, const Vec &x) {
  Vec out(y);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f.add(out[i], f.mul(a, x[i]));
  return out;
}

Vec scale(const Field &f, Elem a, const Vec &x) {
  Vec out(x);
  for (auto &e : out) e = f.mul(a, e);
  return out;
}

bool is_zero(const Vec &v) {
  return std::all_of(v.begin(), v.end(), [](Elem e) { return e == 0; });
}

// Keeps a maximal linearly independent subset, in order.
std::vector<Vec> independent(const Field &f, const std::vector<Vec> &vs) {
  std::vector<Vec> kept;
  std::vector<std::pair<std::size_t, Vec>> echelon;
  for (const Vec &v : vs) {
    Vec w = v;
    for (const auto &[pivot, row] : echelon) {
      if (w[pivot] != 0) w = axpy(f, w, f.neg(f.div(w[pivot], row[pivot])), row);
    }
    auto it = std::find_if(w.begin(), w.end(), [](Elem e) { return e != 0; });
    if (it == w.end()) continue;
    echelon.emplace_back(static_cast<std::size_t>(it - w.begin()), w);
    kept.push_back(v);
  }
  return kept;
}

std::vector<Vec> unit_basis(std::size_t n) {
  std::vector<Vec> basis(n, Vec(n, 0));
  for (std::size_t i = 0; i < n; ++i) basis[i][i] = 1;
  return basis;
}

Matrix from_columns(FieldPtr field, const std::vector<Vec> &cols) {
  const std::size_t n = cols.size();
  Matrix t(std::move(field), n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) t.at(i, j) = cols[j][i];
  }
  return t;
}

// Every projective point of span(us[0..min(3, size))).
std::vector<Vec> small_span_points(const Field &f, const std::vector<Vec> &us) {
  const std::size_t k = std::min<std::size_t>(3, us.size());
  std::vector<Vec> points;
  for (std::size_t lead = 0; lead < k; ++lead) {
    const std::size_t rest = k - lead - 1;
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < rest; ++i) count *= f.q();
    for (std::uint64_t code = 0; code < count; ++code) {
      Vec v = us[lead];
      std::uint64_t c = code;
      for (std::size_t i = 0; i < rest; ++i) {
        v = axpy(f, v, static_cast<Elem>(c % f.q()), us[lead + 1 + i]);
        c /= f.q();
      }
      points.push_back(std::move(v));
    }
  }
  return points;
}

Matrix symplectic_basis(const Matrix &g) {
  const Field &f = *g.field();
  Pairing b{f, g, 0};
  const std::size_t n = g.rows();
  std::vector<Vec> us = unit_basis(n);
  std::vector<Vec> xs, ys;
  while (!us.empty()) {
    Vec x = us.front();
    std::optional<Vec> y;
    for (const Vec &u : us) {
      if (b(x, u) != 0) {
        y = scale(f, f.inv(b(x, u)), u);
        break;
      }
    }
    if (!y) throw InternalError("alternating form is degenerate");
    std::vector<Vec> next;
    for (const Vec &v : us) {
      Vec w = axpy(f, v, f.neg(b(v, *y)), x);
      w = axpy(f, w, b(v, x), *y);
      if (!is_zero(w)) next.push_back(std::move(w));
    }
    xs.push_back(x);
    ys.push_back(*y);
    us = independent(f, next);
  }
  std::vector<Vec> cols = xs;
  cols.insert(cols.end(), ys.begin(), ys.end());
  return from_columns(g.field(), cols);
}

struct OrthogonalBasis {
  Matrix t;
  FormKind kind;
};

// Returns T with T^T G T = c * standard form (c a nonzero scalar, 1 for even n).
OrthogonalBasis orthogonal_basis(const Matrix &g) {
  const Field &f = *g.field();
  Pairing b{f, g, 0};
  const std::size_t n = g.rows();
  const Elem two_inv = f.inv(f.from_int(2));
  std::vector<Vec> us = unit_basis(n);
  std::vector<Vec> xs, ys;
  while (us.size() >= 2) {
    std::optional<Vec> x;
    for (const Vec &v : small_span_points(f, us)) {
      if (b(v, v) == 0) {
        x = v;
        break;
      }
    }
    if (!x) break;
    std::optional<Vec> y;
    for (const Vec &u : us) {
      if (b(*x, u) != 0) {
        y = scale(f, f.inv(b(*x, u)), u);
        break;
      }
    }
    if (!y) throw InternalError("symmetric form is degenerate");
    *y = axpy(f, *y, f.neg(f.mul(b(*y, *y), two_inv)), *x);
    std::vector<Vec> next;
    for (const Vec &v : us) {
      Vec w = axpy(f, v, f.neg(b(v, *y)), *x);
      w = axpy(f, w, f.neg(b(v, *x)), *y);
      if (!is_zero(w)) next.push_back(std::move(w));
    }
    xs.push_back(*x);
    ys.push_back(*y);
    us = independent(f, next);
  }
  const std::size_t pairs = xs.size();
  std::vector<Vec> cols(n);
  if (us.empty()) {
    for (std::size_t i = 0; i < pairs; ++i) {
      cols[i] = xs[i];
      cols[pairs + i] = ys[i];
    }
    return {from_columns(g.field(), cols), FormKind::OrthPlus};
  }
  if (us.size() == 1) {
    const Elem c = f.neg(b(us[0], us[0]));
    cols[0] = us[0];
    for (std::size_t i = 0; i < pairs; ++i) {
      cols[1 + i] = xs[i];
      cols[1 + pairs + i] = scale(f, c, ys[i]);
    }
    return {from_columns(g.field(), cols), FormKind::OrthOdd};
  }
  // Anisotropic plane.
  const std::size_t m = pairs + 1;
  std::optional<Vec> a;
  for (std::uint64_t c1 = 0; c1 < f.q() && !a; ++c1) {
    for (std::uint64_t c2 = 0; c2 < f.q() && !a; ++c2) {
      Vec v = axpy(f, scale(f, static_cast<Elem>(c1), us[0]), static_cast<Elem>(c2), us[1]);
      if (b(v, v) == 1) a = v;
    }
  }
  if (!a) throw InternalError("anisotropic plane does not represent 1");
  Vec u = independent(f, {*a, us[0]}).size() == 2 ? us[0] : us[1];
  Vec w = axpy(f, u, f.neg(b(u, *a)), *a);
  const Elem eta = f.least_nonsquare();
  const Elem target = f.neg(f.div(b(w, w), eta));  // t^2
  if (!f.is_square(target)) throw InternalError("anisotropic plane has the wrong discriminant");
  const Elem t = target == 0 ? 0 : f.exp(f.log(target) / 2);
  cols[0] = *a;
  cols[m] = scale(f, f.inv(t), w);
  for (std::size_t i = 0; i < pairs; ++i) {
    cols[1 + i] = xs[i];
    cols[m + 1 + i] = ys[i];
  }
  return {from_columns(g.field(), cols), FormKind::OrthMinus};
}

// T with T^T G conj(T) = I.
Matrix hermitian_basis(const Matrix &g, unsigned conj) {
  const Field &f = *g.field();
  Pairing h{f, g, conj};
  const std::size_t n = g.rows();
  const std::uint64_t qbase = ipow(f.p(), conj);
  std::vector<Vec> us = unit_basis(n);
  std::vector<Vec> cols;
  while (!us.empty()) {
    std::optional<Vec> x;
    for (const Vec &u : us) {
      if (h(u, u) != 0) {
        x = u;
        break;
      }
    }
    for (std::size_t i = 0; i < us.size() && !x; ++i) {
      for (std::size_t j = i + 1; j < us.size() && !x; ++j) {
        for (std::uint64_t c = 1; c < f.q() && !x; ++c) {
          Vec v = axpy(f, us[i], static_cast<Elem>(c), us[j]);
          if (h(v, v) != 0) x = v;
        }
      }
    }
    if (!x) throw InternalError("hermitian form is degenerate");
    const Elem hx = h(*x, *x);
    const std::uint64_t k = f.log(f.inv(hx));
    if (k % (qbase + 1) != 0) throw InternalError("hermitian norm is not in the base field");
    const Vec xn = scale(f, f.exp(k / (qbase + 1)), *x);
    std::vector<Vec> next;
    for (const Vec &v : us) {
      Vec w = axpy(f, v, f.neg(h(v, xn)), xn);
      if (!is_zero(w)) next.push_back(std::move(w));
    }
    cols.push_back(xn);
    us = independent(f, next);
  }
  return from_columns(g.field(), cols);
}

Matrix block_diagonal(FieldPtr field, const std::vector<Matrix> &blocks) {
  std::size_t n = 0;
  for (const auto &b : blocks) n += b.rows();
  Matrix out(std::move(field), n, n);
  std::size_t at = 0;
  for (const auto &b : blocks) {
    out.set_block(at, at, b);
    at += b.rows();
  }
  return out;
}

struct NaturalModel {
  Matrix gram;
  std::vector<Matrix> torus;
  std::vector<Matrix> perms;
};

// k copies of a block with its torus generator, followed by a remainder.
NaturalModel assemble(FieldPtr field, std::uint64_t k, const Matrix &block_gram,
                      const Matrix &block_torus, const Matrix &remainder_gram, std::uint64_t l) {
  const std::size_t bd = block_torus.rows();
  const std::size_t rem = remainder_gram.rows();
  const std::size_t n = k * bd + rem;
  NaturalModel model;
  std::vector<Matrix> grams;
  if (block_gram.rows() > 0) {
    for (std::uint64_t i = 0; i < k; ++i) grams.push_back(block_gram);
  }
  if (rem > 0) grams.push_back(remainder_gram);
  if (block_gram.rows() > 0 || (k == 0 && rem > 0)) model.gram = block_diagonal(field, grams);
  for (std::uint64_t i = 0; i < k; ++i) {
    Matrix t = Matrix::identity(field, n);
    t.set_block(i * bd, i * bd, block_torus);
    model.torus.push_back(std::move(t));
  }
  for (const Perm &sigma : build_pl_sn(k, l)) {
    std::vector<std::size_t> images(n);
    for (std::size_t i = 0; i < n; ++i) images[i] = i;
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t u = 0; u < bd; ++u) images[j * bd + u] = sigma(j) * bd + u;
    }
    model.perms.push_back(Matrix::permutation(field, images));
  }
  return model;
}

Matrix hyperbolic_torus(const Matrix &a, unsigned conj) {
  const std::size_t d = a.rows();
  Matrix inv_t = a.inverse().transpose();
  if (conj) inv_t = inv_t.frobenius(conj);
  Matrix out(a.field(), 2 * d, 2 * d);
  out.set_block(0, 0, a);
  out.set_block(d, d, inv_t);
  return out;
}

std::vector<Elem> scalars_of_order_dividing(const Field &f, std::uint64_t n,
                                            std::uint64_t extra_order = 0) {
  std::vector<Elem> out;
  for (std::uint64_t a = 1; a < f.q(); ++a) {
    const Elem e = static_cast<Elem>(a);
    if (f.pow(e, static_cast<std::int64_t>(n)) != 1) continue;
    if (extra_order && f.pow(e, static_cast<std::int64_t>(extra_order)) != 1) continue;
    out.push_back(e);
  }
  return out;
}

// Signed permutation matrices keep determinant one.
Matrix signed_permutation(FieldPtr field, const Perm &sigma) {
  std::vector<std::size_t> images(sigma.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) images[i] = sigma(i);
  Matrix m = Matrix::permutation(field, images);
  if (sigma.sign() < 0) {
    for (std::size_t i = 0; i < m.rows(); ++i) m.at(i, 0) = field->neg(m.at(i, 0));
  }
  return m;
}

void to_standard(SylowGenerators &out, NaturalModel &model) {
  const Matrix &std_gram = out.form.gram;
  Matrix t;
  if (model.gram.rows() == 0 || model.gram == std_gram) {
    out.torus = std::move(model.torus);
    out.permutations = std::move(model.perms);
    return;
  }
  switch (out.form.kind) {
    case FormKind::Symplectic:
      t = symplectic_basis(model.gram);
      break;
    case FormKind::Hermitian:
      t = hermitian_basis(model.gram, out.form.conj);
      break;
    default: {
      OrthogonalBasis ob = orthogonal_basis(model.gram);
      if (ob.kind != out.form.kind) throw InternalError("natural model has the wrong type");
      t = ob.t;
    }
  }
  const Matrix t_inv = t.inverse();
  for (auto &m : model.torus) out.torus.push_back(t_inv * m * t);
  for (auto &m : model.perms) out.permutations.push_back(t_inv * m * t);
}

Matrix trace_form_block(const Embedding &emb, Elem eps, std::size_t dim, Elem c,
                        unsigned frob) {
  const Field &K = *emb.big();
  Matrix g(emb.small(), dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      const Elem x = K.pow(eps, static_cast<std::int64_t>(i));
      const Elem y = K.frobenius(K.pow(eps, static_cast<std::int64_t>(j)), frob);
      g.at(i, j) = emb.trace(K.mul(c, K.mul(x, y)));
    }
  }
  return g;
}

FormKind orthogonal_kind(Epsilon eps) {
  switch (eps) {
    case Epsilon::Plus:
      return FormKind::OrthPlus;
    case Epsilon::Minus:
      return FormKind::OrthMinus;
    default:
      return FormKind::OrthOdd;
  }
}

bool projective(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::PSL:
    case FamilyTag::SLQuotient:
    case FamilyTag::PSp:
    case FamilyTag::POmegaOdd:
    case FamilyTag::POmegaPlus:
    case FamilyTag::POmegaMinus:
    case FamilyTag::PSU:
      return true;
    default:
      return false;
  }
}

void linear_generators(SylowGenerators &out, FamilyTag tag, std::uint64_t nprime,
                       std::uint64_t n, std::uint64_t p, unsigned r, std::uint64_t l) {
  FieldPtr f = make_field(p, r);
  out.field = f;
  out.form = {FormKind::None, Matrix(), 0};
  out.det_one = tag != FamilyTag::GL;
  const SylowParams sp = sylow_params(n, p, r, l);
  const std::uint64_t order = ipow(l, sp.s);
  if (tag != FamilyTag::GL && q_mod(p, r, l) == 1) {
    const Elem eps = root_of_unity(*f, order);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      std::vector<Elem> diag(n, 1);
      diag[i] = eps;
      diag[i + 1] = f->inv(eps);
      out.torus.push_back(Matrix::diagonal(f, diag));
    }
    for (const Perm &sigma : build_pl_sn(n, l)) out.permutations.push_back(signed_permutation(f, sigma));
    out.blocks = n;
    out.block_dim = 1;
    out.layout = "diag(eps, eps^-1) on adjacent coordinates, signed block permutations";
  } else {
    FieldPtr K = make_field(p, r * sp.d);
    Embedding emb(f, K);
    const Elem eps = root_of_unity(*K, order);
    const Matrix e = companion_embed(eps, emb, sp.d);
    NaturalModel model = assemble(f, sp.n0, Matrix(), e,
                                  Matrix::identity(f, n - sp.d * sp.n0), l);
    out.torus = std::move(model.torus);
    out.permutations = std::move(model.perms);
    out.blocks = sp.n0;
    out.block_dim = sp.d;
    out.layout = "companion blocks of degree d, block permutations";
  }
  if (tag == FamilyTag::PSL) out.scalars = scalars_of_order_dividing(*f, n);
  if (tag == FamilyTag::SLQuotient) out.scalars = scalars_of_order_dividing(*f, nprime);
}

void symplectic_generators(SylowGenerators &out, FamilyTag tag, std::uint64_t n,
                           std::uint64_t p, unsigned r, std::uint64_t l) {
  FieldPtr f = make_field(p, r);
  out.field = f;
  out.form = standard_form(FormKind::Symplectic, f, n);
  out.det_one = true;
  const unsigned e = mult_order(q_mod(p, r, l), l);
  FieldPtr K = make_field(p, r * e);
  Embedding emb(f, K);
  const unsigned s = nu(l, BigInt(big_pow(p, r * e) - 1));
  const Elem eps = root_of_unity(*K, ipow(l, s));
  const Matrix a = companion_embed(eps, emb, e);
  NaturalModel model;
  if (e % 2 == 1) {
    const std::uint64_t k = (n / 2) / e;
    model = assemble(f, k, standard_form(FormKind::Symplectic, f, 2 * e).gram,
                     hyperbolic_torus(a, 0),
                     standard_form(FormKind::Symplectic, f, n - 2 * e * k).gram, l);
    out.blocks = k;
    out.block_dim = 2 * e;
    out.layout = "hyperbolic blocks diag(E, E^-T), block permutations";
  } else {
    const unsigned half = e / 2;
    Elem c = 1;
    if (p != 2) {
      const std::uint64_t qf = ipow(ipow(p, r), half);
      c = K->pow(K->generator(), static_cast<std::int64_t>((qf + 1) / 2));
    }
    const std::uint64_t k = n / e;
    model = assemble(f, k, trace_form_block(emb, eps, e, c, r * half), a,
                     standard_form(FormKind::Symplectic, f, n - e * k).gram, l);
    out.blocks = k;
    out.block_dim = e;
    out.layout = "alternating trace-form blocks on F_{q^d}, block permutations";
  }
  to_standard(out, model);
  if (tag == FamilyTag::PSp) out.scalars = scalars_of_order_dividing(*f, 2);
}

void orthogonal_generators(SylowGenerators &out, FamilyTag tag, std::uint64_t n,
                           std::uint64_t p, unsigned r, std::uint64_t l) {
  if (p == 2) {
    throw UnsupportedCase("orthogonal Sylow generators need odd characteristic");
  }
  FieldPtr f = make_field(p, r);
  const Epsilon eps_type = orthogonal_type(tag);
  const FormKind kind = orthogonal_kind(eps_type);
  out.field = f;
  out.form = standard_form(kind, f, n);
  out.det_one = projective(tag);
  const unsigned e = mult_order(q_mod(p, r, l), l);
  FieldPtr K = make_field(p, r * e);
  Embedding emb(f, K);
  const unsigned s = nu(l, BigInt(big_pow(p, r * e) - 1));
  const Elem eps = root_of_unity(*K, ipow(l, s));
  const Matrix a = companion_embed(eps, emb, e);
  auto remainder = [&](FormKind rk, std::size_t dim) {
    return dim == 0 ? Matrix(f, 0, 0) : standard_form(rk, f, dim).gram;
  };
  NaturalModel model;
  if (e % 2 == 1) {
    std::uint64_t k = (n / 2) / e;
    if (kind == FormKind::OrthMinus && 2 * e * k == n) --k;
    model = assemble(f, k, standard_form(FormKind::OrthPlus, f, 2 * e).gram,
                     hyperbolic_torus(a, 0), remainder(kind, n - 2 * e * k), l);
    out.blocks = k;
    out.block_dim = 2 * e;
    out.layout = "hyperbolic blocks diag(E, E^-T), block permutations";
  } else {
    const unsigned half = e / 2;
    const Matrix block = trace_form_block(emb, eps, e, 1, r * half);
    const FormKind block_kind = orthogonal_basis(block).kind;
    std::uint64_t k = n / e;
    auto rest_kind = [&](std::uint64_t blocks) {
      if (kind == FormKind::OrthOdd) return FormKind::OrthOdd;
      bool plus = kind == FormKind::OrthPlus;
      if (block_kind == FormKind::OrthMinus && blocks % 2 == 1) plus = !plus;
      return plus ? FormKind::OrthPlus : FormKind::OrthMinus;
    };
    if (n == e * k && rest_kind(k) != FormKind::OrthPlus) --k;
    model = assemble(f, k, block, a, remainder(rest_kind(k), n - e * k), l);
    out.blocks = k;
    out.block_dim = e;
    out.layout = "symmetric trace-form blocks on F_{q^d}, block permutations";
  }
  to_standard(out, model);
  if (projective(tag)) out.scalars = scalars_of_order_dividing(*f, 2);
}

void unitary_generators(SylowGenerators &out, FamilyTag tag, std::uint64_t n, std::uint64_t p,
                        unsigned r, std::uint64_t l) {
  FieldPtr f = make_field(p, 2 * r);
  out.field = f;
  out.form = standard_form(FormKind::Hermitian, f, n);
  const UnitaryVariant variant = unitary_variant(tag);
  out.det_one = variant != UnitaryVariant::U;
  const std::uint64_t q = ipow(p, r);
  const unsigned e = l == 2 ? 2 : mult_order(q % l, l);
  const bool diagonal = l == 2 || e == 2;
  if (diagonal) {
    const unsigned s = l == 2 ? nu(2, q + 1) : nu(l, BigInt(big_pow(p, 2 * r) - 1));
    const Elem eps = root_of_unity(*f, ipow(l, s));
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Elem> diag(n, 1);
      if (variant == UnitaryVariant::U) {
        diag[i] = eps;
      } else {
        if (i + 1 == n) break;
        diag[i] = eps;
        diag[i + 1] = f->inv(eps);
      }
      out.torus.push_back(Matrix::diagonal(f, diag));
    }
    for (const Perm &sigma : build_pl_sn(n, l)) {
      if (variant == UnitaryVariant::U) {
        std::vector<std::size_t> images(n);
        for (std::size_t i = 0; i < n; ++i) images[i] = sigma(i);
        out.permutations.push_back(Matrix::permutation(f, images));
      } else {
        out.permutations.push_back(signed_permutation(f, sigma));
      }
    }
    out.blocks = n;
    out.block_dim = 1;
    out.layout = "diagonal norm-one torus, block permutations";
  } else {
    const bool anisotropic = e % 4 == 2;
    const unsigned g = anisotropic ? e / 2 : (e % 2 == 1 ? e : e / 2);
    FieldPtr K = make_field(p, 2 * r * g);
    Embedding emb(f, K);
    const unsigned s = nu(l, BigInt(big_pow(p, 2 * r * g) - 1));
    const Elem eps = root_of_unity(*K, ipow(l, s));
    const Matrix a = companion_embed(eps, emb, g);
    NaturalModel model;
    if (anisotropic) {
      const std::uint64_t k = n / g;
      model = assemble(f, k, trace_form_block(emb, eps, g, 1, r * g), a,
                       Matrix::identity(f, n - g * k), l);
      out.blocks = k;
      out.block_dim = g;
      out.layout = "hermitian trace-form blocks, block permutations";
    } else {
      const std::uint64_t k = n / (2 * g);
      Matrix hyper(f, 2 * g, 2 * g);
      for (std::size_t i = 0; i < g; ++i) {
        hyper.at(i, g + i) = 1;
        hyper.at(g + i, i) = 1;
      }
      model = assemble(f, k, hyper, hyperbolic_torus(a, r), Matrix::identity(f, n - 2 * g * k),
                       l);
      out.blocks = k;
      out.block_dim = 2 * g;
      out.layout = "hyperbolic hermitian blocks diag(A, conj(A^-T)), block permutations";
    }
    to_standard(out, model);
  }
  if (variant == UnitaryVariant::PSU) out.scalars = scalars_of_order_dividing(*f, n, q + 1);
}

}  // namespace

std::string to_string(FormKind kind) {
  switch (kind) {
    case FormKind::None:
      return "none";
    case FormKind::Symplectic:
      return "symplectic";
    case FormKind::OrthPlus:
      return "orth_plus";
    case FormKind::OrthMinus:
      return "orth_minus";
    case FormKind::OrthOdd:
      return "orth_odd";
    case FormKind::Hermitian:
      return "hermitian";
  }
  return "unknown";
}

ClassicalForm standard_form(FormKind kind, FieldPtr field, std::size_t n) {
  ClassicalForm form;
  form.kind = kind;
  const Field &f = *field;
  form.gram = Matrix(field, n, n);
  Matrix &g = form.gram;
  switch (kind) {
    case FormKind::None:
      g = Matrix::identity(field, n);
      break;
    case FormKind::Symplectic:
    case FormKind::OrthPlus: {
      if (n % 2) throw std::invalid_argument("form needs an even dimension");
      const std::size_t m = n / 2;
      for (std::size_t i = 0; i < m; ++i) {
        g.at(i, m + i) = 1;
        g.at(m + i, i) = kind == FormKind::Symplectic ? f.neg(1) : 1;
      }
      break;
    }
    case FormKind::OrthMinus: {
      if (n % 2 || n == 0) throw std::invalid_argument("minus form needs a positive even dimension");
      const std::size_t m = n / 2;
      g.at(0, 0) = 1;
      g.at(m, m) = f.neg(f.least_nonsquare());
      for (std::size_t i = 1; i < m; ++i) {
        g.at(i, m + i) = 1;
        g.at(m + i, i) = 1;
      }
      break;
    }
    case FormKind::OrthOdd: {
      if (n % 2 == 0) throw std::invalid_argument("odd form needs an odd dimension");
      const std::size_t m = n / 2;
      g.at(0, 0) = f.neg(1);
      for (std::size_t i = 0; i < m; ++i) {
        g.at(1 + i, 1 + m + i) = 1;
        g.at(1 + m + i, 1 + i) = 1;
      }
      break;
    }
    case FormKind::Hermitian:
      if (f.r() % 2) throw std::invalid_argument("hermitian forms live over F_{q^2}");
      g = Matrix::identity(field, n);
      form.conj = f.r() / 2;
      break;
  }
  return form;
}

bool form_member(const Matrix &m, const ClassicalForm &form, bool det_one) {
  if (!m.is_square()) throw std::invalid_argument("form_member needs a square matrix");
  if (form.kind != FormKind::None) {
    if (form.gram.rows() != m.rows()) throw std::invalid_argument("form dimension mismatch");
    const Matrix right = form.conj ? m.frobenius(form.conj) : m;
    if (m.transpose() * form.gram * right != form.gram) return false;
  }
  if (det_one && m.det() != 1) return false;
  return true;
}

std::vector<Matrix> SylowGenerators::all() const {
  std::vector<Matrix> out = torus;
  out.insert(out.end(), permutations.begin(), permutations.end());
  return out;
}

BigInt group_order(const Family &family, std::uint64_t n, std::uint64_t p, unsigned r) {
  const BigInt q = big_pow(p, r);
  auto qp = [&](std::uint64_t e) { return BigInt(boost::multiprecision::pow(q, static_cast<unsigned>(e))); };
  auto gcd = [](BigInt a, BigInt b) { return BigInt(boost::multiprecision::gcd(a, b)); };
  auto gl = [&](std::uint64_t m) {
    BigInt out = 1;
    for (std::uint64_t i = 0; i < m; ++i) out *= qp(m) - qp(i);
    return out;
  };
  auto sp = [&](std::uint64_t m) {
    BigInt out = qp(m * m);
    for (std::uint64_t i = 1; i <= m; ++i) out *= qp(2 * i) - 1;
    return out;
  };
  auto orth_even = [&](std::uint64_t m, bool plus) {
    BigInt out = 2 * qp(m * (m - 1)) * (plus ? qp(m) - 1 : qp(m) + 1);
    for (std::uint64_t i = 1; i < m; ++i) out *= qp(2 * i) - 1;
    return out;
  };
  auto orth_odd = [&](std::uint64_t m) { return p == 2 ? sp(m) : BigInt(2 * sp(m)); };
  auto unitary = [&](std::uint64_t m) {
    BigInt out = qp(m * (m - 1) / 2);
    for (std::uint64_t i = 1; i <= m; ++i) out *= (i % 2 ? qp(i) + 1 : qp(i) - 1);
    return out;
  };
  const std::uint64_t m = n / 2;
  switch (family.tag) {
    case FamilyTag::GL:
      return gl(n);
    case FamilyTag::SL:
      return gl(n) / (q - 1);
    case FamilyTag::PSL:
      return gl(n) / (q - 1) / gcd(BigInt(n), q - 1);
    case FamilyTag::SLQuotient:
      return gl(n) / (q - 1) / gcd(BigInt(family.nprime), q - 1);
    case FamilyTag::Sp:
      return sp(m);
    case FamilyTag::PSp:
      return sp(m) / gcd(BigInt(2), q - 1);
    case FamilyTag::OrthOdd:
      return orth_odd(m);
    case FamilyTag::OrthPlus:
      return orth_even(m, true);
    case FamilyTag::OrthMinus:
      return orth_even(m, false);
    case FamilyTag::POmegaOdd:
      return p == 2 ? sp(m) : BigInt(orth_odd(m) / 4);
    case FamilyTag::POmegaPlus:
      return p == 2 ? BigInt(orth_even(m, true) / 2)
                    : BigInt(orth_even(m, true) / (2 * gcd(BigInt(4), qp(m) - 1)));
    case FamilyTag::POmegaMinus:
      return p == 2 ? BigInt(orth_even(m, false) / 2)
                    : BigInt(orth_even(m, false) / (2 * gcd(BigInt(4), qp(m) + 1)));
    case FamilyTag::U:
      return unitary(n);
    case FamilyTag::SU:
      return unitary(n) / (q + 1);
    case FamilyTag::PSU:
      return unitary(n) / (q + 1) / gcd(BigInt(n), q + 1);
  }
  throw std::invalid_argument("unknown family");
}

unsigned group_order_l_part(const Family &family, std::uint64_t n, std::uint64_t p, unsigned r,
                            std::uint64_t l) {
  return nu(l, group_order(family, n, p, r));
}

SylowGenerators sylow_generators(const Family &family, std::uint64_t n, std::uint64_t p,
                                 unsigned r, std::uint64_t l) {
  validate(family, n, p, r, l);
  SylowGenerators out;
  const FamilyTag tag = family.tag;
  if (is_linear(tag)) {
    linear_generators(out, tag, family.nprime, n, p, r, l);
  } else if (is_symplectic(tag)) {
    symplectic_generators(out, tag, n, p, r, l);
  } else if (is_orthogonal(tag)) {
    orthogonal_generators(out, tag, n, p, r, l);
  } else {
    unitary_generators(out, tag, n, p, r, l);
  }
  for (const Matrix &m : out.all()) {
    if (!form_member(m, out.form, out.det_one)) {
      throw InternalError("constructed Sylow generator violates the " + to_string(out.form.kind) +
                          " form of " + to_string(family));
    }
  }
  return out;
}

ClosureResult closure_order(const std::vector<Matrix> &generators,
                            const std::vector<Elem> &scalars, std::uint64_t budget) {
  ClosureResult result;
  if (generators.empty()) {
    result.order = 1;
    result.complete = true;
    return result;
  }
  const Field &f = *generators.front().field();
  if (f.q() > 65536) throw std::invalid_argument("closure storage needs q <= 65536");
  const std::size_t n = generators.front().rows();
  const std::size_t nn = n * n;

  // Column-sparse view of each generator.
  struct Entry {
    std::uint32_t row;
    Elem value;
  };
  std::vector<std::vector<std::vector<Entry>>> sparse(generators.size(),
                                                      std::vector<std::vector<Entry>>(n));
  for (std::size_t g = 0; g < generators.size(); ++g) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const Elem v = generators[g].at(k, j);
        if (v) sparse[g][j].push_back({static_cast<std::uint32_t>(k), v});
      }
    }
  }

  std::vector<std::uint16_t> arena;
  auto slot = [&](std::uint32_t idx) { return arena.data() + static_cast<std::size_t>(idx) * nn; };
  struct Hash {
    const std::vector<std::uint16_t> *arena;
    std::size_t nn;
    std::size_t operator()(std::uint32_t idx) const {
      const std::uint16_t *p = arena->data() + static_cast<std::size_t>(idx) * nn;
      std::size_t h = 1469598103934665603ull;
      for (std::size_t i = 0; i < nn; ++i) h = (h ^ p[i]) * 1099511628211ull;
      return h;
    }
  };
  struct Eq {
    const std::vector<std::uint16_t> *arena;
    std::size_t nn;
    bool operator()(std::uint32_t a, std::uint32_t b) const {
      return std::memcmp(arena->data() + static_cast<std::size_t>(a) * nn,
                         arena->data() + static_cast<std::size_t>(b) * nn,
                         nn * sizeof(std::uint16_t)) == 0;
    }
  };
  std::unordered_set<std::uint32_t, Hash, Eq> seen(1024, Hash{&arena, nn}, Eq{&arena, nn});

  std::vector<std::uint16_t> work(nn), best(nn), cand(nn);
  auto canonical = [&](std::vector<std::uint16_t> &m) {
    if (scalars.empty()) return;
    best = m;
    for (Elem a : scalars) {
      for (std::size_t i = 0; i < nn; ++i) cand[i] = static_cast<std::uint16_t>(f.mul(a, m[i]));
      if (cand < best) best = cand;
    }
    m = best;
  };
  auto push = [&](std::vector<std::uint16_t> &m) {
    canonical(m);
    const std::uint32_t idx = static_cast<std::uint32_t>(arena.size() / nn);
    arena.insert(arena.end(), m.begin(), m.end());
    if (seen.insert(idx).second) return true;
    arena.resize(arena.size() - nn);
    return false;
  };

  std::vector<std::uint16_t> id(nn, 0);
  for (std::size_t i = 0; i < n; ++i) id[i * n + i] = 1;
  push(id);
  for (std::uint32_t head = 0; head < arena.size() / nn; ++head) {
    for (std::size_t g = 0; g < generators.size(); ++g) {
      const std::uint16_t *x = slot(head);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          Elem acc = 0;
          for (const Entry &e : sparse[g][j]) {
            const Elem xv = x[i * n + e.row];
            if (xv) acc = f.add(acc, f.mul(xv, e.value));
          }
          work[i * n + j] = static_cast<std::uint16_t>(acc);
        }
      }
      if (push(work) && arena.size() / nn > budget) {
        result.order = arena.size() / nn;
        result.complete = false;
        return result;
      }
    }
  }
  result.order = arena.size() / nn;
  result.complete = true;
  return result;
}

}  // namespace essdim::gf
