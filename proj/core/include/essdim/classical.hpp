#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "essdim/family.hpp"
#include "essdim/gf_matrix.hpp"
#include "essdim/numth.hpp"

namespace essdim::gf {

enum class FormKind { None, Symplectic, OrthPlus, OrthMinus, OrthOdd, Hermitian };

std::string to_string(FormKind kind);

struct ClassicalForm {
  FormKind kind = FormKind::None;
  Matrix gram;
  // Hermitian forms pair x with y^{p^conj}; zero otherwise.
  unsigned conj = 0;
};

// Standard Gram matrices on F^n:
//   symplectic  [[0, I], [-I, 0]]
//   orth_plus   [[0, I], [I, 0]]
//   orth_minus  the plus form on coordinates (i, m+i), i >= 1, with the first
//               pair replaced by the anisotropic plane diag(1, -eta) on
//               coordinates 0 and m, eta the least non-square
//   orth_odd    (-1) on coordinate 0 plus pairs (1+i, 1+m+i)
//   hermitian   the identity over F_{q^2}, with conjugation x -> x^q
ClassicalForm standard_form(FormKind kind, FieldPtr field, std::size_t n);

// M^T G M = G (with entrywise conjugation of the right factor for hermitian
// forms) and det M = 1 when det_one is set.
bool form_member(const Matrix &m, const ClassicalForm &form, bool det_one);

// Exact classical orders. For Sp families n is the matrix dimension; for
// unitary families the group is defined over F_{q^2} with q = p^r.
BigInt group_order(const Family &family, std::uint64_t n, std::uint64_t p, unsigned r);
unsigned group_order_l_part(const Family &family, std::uint64_t n, std::uint64_t p, unsigned r,
                            std::uint64_t l);

struct SylowGenerators {
  FieldPtr field;
  ClassicalForm form;
  bool det_one = false;
  std::vector<Matrix> torus;
  std::vector<Matrix> permutations;
  // Scalar matrices factored out for projective families (empty otherwise).
  std::vector<Elem> scalars;
  std::uint64_t blocks = 0;
  std::size_t block_dim = 0;
  std::string layout;

  std::vector<Matrix> all() const;
};

// Generators of a Sylow l-subgroup in the standard form of the family:
// torus generators on k blocks plus block permutation matrices realizing
// P_l(S_k). Every matrix is checked against the family's form.
SylowGenerators sylow_generators(const Family &family, std::uint64_t n, std::uint64_t p,
                                 unsigned r, std::uint64_t l);

struct ClosureResult {
  std::uint64_t order = 0;
  bool complete = false;  // false when the budget stopped the search
};

// Breadth-first closure of the generated group, modulo the given scalars.
ClosureResult closure_order(const std::vector<Matrix> &generators,
                            const std::vector<Elem> &scalars, std::uint64_t budget);

}  // namespace essdim::gf
