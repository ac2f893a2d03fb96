#include <chrono>
#include <cstdint>
#include <functional>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "essdim/classical.hpp"
#include "essdim/cli.hpp"
#include "essdim/error.hpp"
#include "essdim/formulas.hpp"
#include "essdim/mackey.hpp"
#include "essdim/numth.hpp"
#include "essdim/wreath.hpp"

using namespace essdim;

namespace {

// All comparisons are exact integer equalities.
constexpr std::uint64_t kOrderBudget = std::uint64_t{1} << 20;
constexpr std::uint64_t kTelescopeMax = 10000;
constexpr std::uint64_t kTelescopePrimeMax = 97;
const std::vector<std::string> kGridFamilies{"GL", "SL", "PSL"};
const std::vector<std::uint64_t> kGridLs{2, 3, 5};
const std::vector<std::uint64_t> kGridQs{3, 4, 5, 7, 8, 9};
constexpr std::uint64_t kGridMaxN = 6;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void fail(const std::string &why) {
    pass = false;
    notes.push_back(why);
  }
};

std::string tuple_name(const cli::Tuple &t) {
  std::ostringstream s;
  s << to_string(t.family) << " n=" << t.n << " q=" << t.q() << " l=" << t.l;
  return s.str();
}

const cli::VerifyReport &grid_report() {
  static const cli::VerifyReport report =
      cli::run_verify(cli::build_grid(kGridFamilies, kGridLs, kGridQs, kGridMaxN), kOrderBudget, 0);
  return report;
}

Outcome concordance() {
  Outcome out;
  for (const auto &row : cli::concordance_rows()) {
    std::uint64_t got = 0;
    try {
      got = essential_dimension(row.family, row.n, row.p, row.r, row.l).value;
    } catch (const std::exception &e) {
      out.fail(row.group + " l=" + std::to_string(row.l) + ": " + e.what());
      continue;
    }
    if (got != row.expected) {
      out.fail(row.group + " l=" + std::to_string(row.l) + ": computed " + std::to_string(got) +
               ", expected " + std::to_string(row.expected) + " (|G| = " +
               gf::group_order(row.family, row.n, row.p, row.r).str() + ")");
    }
  }
  return out;
}

Outcome formula_vs_oracle() {
  Outcome out;
  std::size_t compared = 0, edge = 0, skipped = 0;
  for (const auto &rec : grid_report().records) {
    if (rec.status == cli::Status::SkippedBudget) {
      ++skipped;
      continue;
    }
    ++compared;
    if (rec.status != cli::Status::Mismatch) continue;
    const auto msg = tuple_name(rec.tuple) + ": formula " + std::to_string(rec.formula_value) +
                     ", oracle " + std::to_string(*rec.oracle_value);
    if (rec.edge) {
      ++edge;
      const bool warned = !rec.warnings.empty();
      if (!warned) out.fail(msg + " (edge tuple without warning)");
    } else {
      out.fail(msg);
    }
  }
  out.notes.insert(out.notes.begin(), std::to_string(compared) + " compared, " +
                                          std::to_string(edge) + " flagged edge, " +
                                          std::to_string(skipped) + " beyond budget");
  return out;
}

Outcome center_rank() {
  Outcome out;
  for (const auto &rec : grid_report().records) {
    if (!rec.center_rank_enumerated) continue;
    if (*rec.center_rank_enumerated == rec.center_rank_formula) continue;
    const auto msg = tuple_name(rec.tuple) + ": enumerated " +
                     std::to_string(*rec.center_rank_enumerated) + ", predicted " +
                     std::to_string(rec.center_rank_formula);
    if (rec.tuple.family.tag == FamilyTag::GL || !rec.edge) {
      out.fail(msg);
    } else {
      out.notes.push_back(msg + " (l-power n)");
    }
  }
  return out;
}

Outcome telescoping() {
  Outcome out;
  for (std::uint64_t l = 2; l <= kTelescopePrimeMax; ++l) {
    if (!is_prime(l)) continue;
    for (std::uint64_t m = 0; m <= kTelescopeMax; ++m) {
      std::uint64_t sum = 0, power = 1;
      for (unsigned k = 0; power <= m; ++k, power *= l) sum += digit(m, l, k) * power;
      if (sum != m) out.fail("m=" + std::to_string(m) + " l=" + std::to_string(l));
    }
  }
  for (const auto &t : cli::build_grid({"GL"}, kGridLs, kGridQs, kGridMaxN)) {
    const auto sp = sylow_params(t.n, t.p, t.r, t.l);
    const auto value = ed_gl(t.n, t.p, t.r, t.l).value;
    if (value != gl_digit_sum(sp.n0, t.l) || value != t.n / sp.d) {
      out.fail(tuple_name(t) + ": ed_gl " + std::to_string(value));
    }
  }
  return out;
}

Outcome sylow_certification() {
  Outcome out;
  const std::vector<FamilyTag> tags{
      FamilyTag::GL,       FamilyTag::SL,         FamilyTag::PSL,        FamilyTag::Sp,
      FamilyTag::PSp,      FamilyTag::OrthOdd,    FamilyTag::OrthPlus,   FamilyTag::OrthMinus,
      FamilyTag::POmegaOdd, FamilyTag::POmegaPlus, FamilyTag::POmegaMinus, FamilyTag::U,
      FamilyTag::SU,       FamilyTag::PSU};
  struct Partial {
    Outcome out;
    std::size_t certified = 0, unconstructible = 0;
  };
  auto run_family = [](FamilyTag tag) {
    Partial part;
    auto &out = part.out;
    auto &certified = part.certified;
    auto &unconstructible = part.unconstructible;
      const Family f{tag};
      for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9}) {
        const auto pr = cli::factor_prime_power(q);
        for (std::uint64_t l : {2, 3, 5, 7}) {
          for (std::uint64_t n = 1; n <= 8; ++n) {
            try {
              validate(f, n, pr->first, pr->second, l);
            } catch (const std::exception &) {
              continue;
            }
            const auto e = gf::group_order_l_part(f, n, pr->first, pr->second, l);
            if (e == 0 || e > 20 || ipow(l, e) > kOrderBudget) continue;
            const std::string name = to_string(f) + " n=" + std::to_string(n) +
                                     " q=" + std::to_string(q) + " l=" + std::to_string(l);
            gf::SylowGenerators g;
            try {
              g = gf::sylow_generators(f, n, pr->first, pr->second, l);
            } catch (const UnsupportedCase &) {
              ++unconstructible;
              continue;
            }
            for (const auto &m : g.all()) {
              if (!gf::form_member(m, g.form, g.det_one)) out.fail(name + ": generator off the form");
            }
            const auto res = gf::closure_order(g.all(), g.scalars, kOrderBudget);
            if (!res.complete || res.order != ipow(l, e)) {
              out.fail(name + ": closure " + std::to_string(res.order) + ", expected " +
                       std::to_string(ipow(l, e)));
            } else {
              ++certified;
            }
          }
        }
      }
    return part;
  };
  std::vector<std::future<Partial>> jobs;
  for (auto tag : tags) jobs.push_back(std::async(std::launch::async, run_family, tag));
  std::size_t certified = 0, unconstructible = 0;
  for (auto &j : jobs) {
    auto part = j.get();
    certified += part.certified;
    unconstructible += part.unconstructible;
    for (const auto &n : part.out.notes) out.fail(n);
  }
  out.notes.insert(out.notes.begin(), std::to_string(certified) + " generator sets certified, " +
                                          std::to_string(unconstructible) +
                                          " without generators (orthogonal in characteristic 2)");
  return out;
}

Outcome faithfulness() {
  Outcome out;
  std::size_t checked = 0;
  for (const auto &rec : grid_report().records) {
    if (rec.status == cli::Status::SkippedBudget || !rec.oracle_value) continue;
    ++checked;
    if (!rec.certified) out.fail(tuple_name(rec.tuple) + ": witness kernel nontrivial");
  }
  out.notes.insert(out.notes.begin(), std::to_string(checked) + " witnesses checked");
  return out;
}

Outcome blockwise() {
  Outcome out;
  std::size_t blocks = 0;
  for (const auto &t : cli::build_grid({"GL"}, kGridLs, kGridQs, kGridMaxN)) {
    const auto spec = cli::model_for(t);
    if (!spec || spec->order() > kOrderBudget) continue;
    const auto g = spec->build();
    const auto bs = block_structure(g.m(), g.l());
    for (std::size_t b = 0; b < bs.blocks.size(); ++b) {
      ++blocks;
      const auto got = min_dim_for_block(g, b);
      if (got != bs.block_size(b)) {
        out.fail(tuple_name(t) + " block " + std::to_string(b) + ": " + std::to_string(got) +
                 ", expected " + std::to_string(bs.block_size(b)));
      }
    }
  }
  out.notes.insert(out.notes.begin(), std::to_string(blocks) + " blocks checked");
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 concordance table", concordance},
      {"2 formula vs oracle", formula_vs_oracle},
      {"3 center rank", center_rank},
      {"4 telescoping identity", telescoping},
      {"5 Sylow certification", sylow_certification},
      {"6 faithfulness certificates", faithfulness},
      {"7 blockwise minima", blockwise},
  };
  int failed = 0;
  for (const auto &[name, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception &e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << name << "  (" << ms << " ms)\n";
    for (const auto &n : o.notes) std::cout << "      " << n << "\n";
    if (!o.pass) ++failed;
  }
  std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria failed")
            << "\n";
  return failed == 0 ? 0 : 1;
}
