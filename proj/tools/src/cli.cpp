#include "essdim/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <exception>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "essdim/classical.hpp"
#include "essdim/error.hpp"
#include "essdim/formulas.hpp"
#include "essdim/mackey.hpp"
#include "essdim/numth.hpp"

namespace essdim::cli {

namespace {

constexpr int kSchemaVersion = 1;

std::string lower(std::string s) {
  for (auto &c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

std::string join(const std::vector<std::string> &parts, const std::string &sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string csv_field(const std::string &s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string q_text(std::uint64_t p, unsigned r) {
  return r == 1 ? std::to_string(p) : std::to_string(p) + "^" + std::to_string(r);
}

nlohmann::ordered_json tuple_json(const Tuple &t) {
  return {{"family", to_string(t.family)}, {"n", t.n},     {"q", t.q()},
          {"p", t.p},                      {"r", t.r},     {"l", t.l}};
}

std::string structure_text(const ModelSpec &m) {
  const std::string base = "Z/" + std::to_string(ipow(m.l, m.s));
  auto power = [&](std::size_t k) {
    if (k == 1) return base;
    return "(" + base + ")^" + std::to_string(k);
  };
  std::string torus;
  switch (m.variant) {
    case WreathVariant::GL:
      torus = power(m.m);
      break;
    case WreathVariant::SL:
      torus = m.m >= 2 ? power(m.m - 1) : "1";
      break;
    case WreathVariant::PSLCase1:
      torus = m.m >= 3 ? power(m.m - 2) : "1";
      break;
    case WreathVariant::PSLCase2: {
      const unsigned t = static_cast<unsigned>(m.t < 0 ? nu(m.l, m.m) : m.t);
      const std::string tail = "Z/" + std::to_string(ipow(m.l, m.s - t));
      torus = m.m >= 3 ? power(m.m - 2) + " x " + tail : tail;
      break;
    }
  }
  if (m.m >= m.l) torus += " ⋊ P_" + std::to_string(m.l) + "(S_" + std::to_string(m.m) + ")";
  return torus;
}

Tuple tuple_from(const Options &opts) {
  if (opts.family.empty()) throw UsageError("--family is required");
  if (opts.n == 0) throw UsageError("--n is required");
  if (opts.l == 0) throw UsageError("--l is required");
  const auto [p, r] = resolve_field(opts);
  return {resolve_family(opts.family, opts.epsilon, opts.nprime), opts.n, p, r, opts.l};
}

template <typename F>
int guarded(std::ostream &err, F &&body) {
  try {
    return body();
  } catch (const UsageError &e) {
    err << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const UnsupportedCase &e) {
    err << "unsupported: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument &e) {
    err << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::out_of_range &e) {
    err << "usage error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

Format parse_format(const std::string &name) {
  const std::string f = lower(name);
  if (f == "text") return Format::Text;
  if (f == "json") return Format::Json;
  if (f == "csv") return Format::Csv;
  throw UsageError("unknown format '" + name + "' (text, json, csv)");
}

std::optional<std::pair<std::uint64_t, unsigned>> factor_prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) return std::make_pair(q, 1u);
  unsigned r = 0;
  while (q % p == 0) {
    q /= p;
    ++r;
  }
  if (q != 1) return std::nullopt;
  return std::make_pair(p, r);
}

Family resolve_family(const std::string &name, const std::string &epsilon, std::uint64_t nprime) {
  const std::string key = lower(name);
  const std::string eps = lower(epsilon);
  auto pick = [&](FamilyTag plus, FamilyTag minus, FamilyTag odd) {
    if (eps == "+" || eps == "plus") return plus;
    if (eps == "-" || eps == "minus") return minus;
    if (eps == "odd" || eps == "0") return odd;
    throw UsageError("--epsilon must be +, - or odd for orthogonal families");
  };
  Family f;
  if (key == "o" || key == "orth") {
    f.tag = pick(FamilyTag::OrthPlus, FamilyTag::OrthMinus, FamilyTag::OrthOdd);
  } else if (key == "pomega" || key == "po") {
    f.tag = pick(FamilyTag::POmegaPlus, FamilyTag::POmegaMinus, FamilyTag::POmegaOdd);
  } else {
    try {
      f.tag = parse_family_tag(name);
    } catch (const std::invalid_argument &e) {
      throw UsageError(e.what());
    }
  }
  if (f.tag == FamilyTag::SLQuotient) f.nprime = nprime;
  return f;
}

std::pair<std::uint64_t, unsigned> resolve_field(const Options &opts) {
  if (opts.q != 0) {
    const auto pr = factor_prime_power(opts.q);
    if (!pr) throw UsageError("q = " + std::to_string(opts.q) + " is not a prime power");
    if ((opts.p && opts.p != pr->first) || (opts.r && opts.r != pr->second)) {
      throw UsageError("--q disagrees with --p/--r");
    }
    return *pr;
  }
  if (opts.p == 0) throw UsageError("give --q or --p (with optional --r)");
  if (!is_prime(opts.p)) throw UsageError("p = " + std::to_string(opts.p) + " is not prime");
  return {opts.p, opts.r ? opts.r : 1};
}

std::uint64_t Tuple::q() const {
  std::uint64_t q = 1;
  for (unsigned i = 0; i < r; ++i) q = sat_mul(q, p);
  return q;
}

std::uint64_t ModelSpec::order() const {
  const std::uint64_t mod = ipow(l, s);
  std::uint64_t torus = 1;
  const std::size_t free_coords = variant == WreathVariant::GL ? m : (m >= 1 ? m - 1 : 0);
  for (std::size_t i = 0; i < free_coords; ++i) torus = sat_mul(torus, mod);
  if (variant == WreathVariant::PSLCase1 || variant == WreathVariant::PSLCase2) {
    const unsigned tv = static_cast<unsigned>(t < 0 ? nu(l, m) : t);
    torus /= ipow(l, std::min(s, tv));
  }
  return sat_mul(torus, ipow(l, nu_factorial(l, m)));
}

WreathGroup ModelSpec::build() const { return make_group(l, s, m, variant, t); }

std::optional<ModelSpec> model_for(const Tuple &tuple) {
  const Reduction red = reduce(tuple.family, tuple.n, tuple.p, tuple.r, tuple.l);
  ModelSpec spec;
  spec.l = tuple.l;
  switch (red.kind) {
    case Reduction::Kind::Trivial:
      return std::nullopt;
    case Reduction::Kind::GL: {
      const SylowParams sp = sylow_params(red.n, red.p, red.r, tuple.l);
      if (sp.n0 == 0) return std::nullopt;
      spec.s = sp.s;
      spec.m = sp.n0;
      spec.variant = WreathVariant::GL;
      return spec;
    }
    case Reduction::Kind::SL:
    case Reduction::Kind::PSL: {
      if (red.n < 2) return std::nullopt;
      spec.s = sylow_params(red.n, red.p, red.r, tuple.l).s;
      spec.m = red.n;
      if (red.kind == Reduction::Kind::SL) {
        spec.variant = WreathVariant::SL;
      } else {
        const unsigned t = nu(tuple.l, red.nprime);
        spec.t = static_cast<int>(t);
        spec.variant = spec.s <= t ? WreathVariant::PSLCase1 : WreathVariant::PSLCase2;
      }
      return spec;
    }
    case Reduction::Kind::Unitary2: {
      spec.s = nu(2, BigInt(big_pow(red.p, red.r) + 1));
      spec.m = red.n;
      if (!red.subtract) {
        spec.variant = WreathVariant::GL;
        return spec;
      }
      if (red.n < 2) return std::nullopt;
      const bool projective = tuple.family.tag == FamilyTag::PSU && red.n % 2 == 0;
      if (!projective) {
        spec.variant = WreathVariant::SL;
      } else {
        const unsigned t = nu(2, red.n);
        spec.t = static_cast<int>(t);
        spec.variant = spec.s <= t ? WreathVariant::PSLCase1 : WreathVariant::PSLCase2;
      }
      return spec;
    }
  }
  return std::nullopt;
}

std::string to_string(Status status) {
  switch (status) {
    case Status::Match:
      return "match";
    case Status::Mismatch:
      return "mismatch";
    case Status::SkippedBudget:
      return "skipped-budget";
  }
  return "unknown";
}

std::size_t VerifyReport::mismatches(bool include_edge) const {
  std::size_t count = 0;
  for (const auto &rec : records) {
    const bool bad = rec.status == Status::Mismatch ||
                     (rec.oracle_value && rec.group_order > 1 && !rec.certified);
    if (bad && (include_edge || !rec.edge)) ++count;
  }
  return count;
}

nlohmann::ordered_json VerifyReport::to_json() const {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  nlohmann::ordered_json grid = nlohmann::ordered_json::array();
  nlohmann::ordered_json recs = nlohmann::ordered_json::array();
  nlohmann::ordered_json edges = nlohmann::ordered_json::array();
  std::size_t match = 0, mismatch = 0, skipped = 0;
  for (const auto &rec : records) {
    grid.push_back(tuple_json(rec.tuple));
    nlohmann::ordered_json r = tuple_json(rec.tuple);
    r["formula_value"] = rec.formula_value;
    r["oracle_value"] = rec.oracle_value ? nlohmann::ordered_json(*rec.oracle_value) : nlohmann::ordered_json();
    r["center_rank_formula"] = rec.center_rank_formula;
    r["center_rank_enumerated"] = rec.center_rank_enumerated
                                      ? nlohmann::ordered_json(*rec.center_rank_enumerated)
                                      : nlohmann::ordered_json();
    r["group_order"] = rec.group_order;
    r["edge"] = rec.edge;
    r["certified"] = rec.certified;
    r["status"] = to_string(rec.status);
    r["warnings"] = rec.warnings;
    if (!rec.witness.is_null()) r["witness"] = rec.witness;
    recs.push_back(r);
    if (rec.edge) edges.push_back(tuple_json(rec.tuple));
    match += rec.status == Status::Match;
    mismatch += rec.status == Status::Mismatch;
    skipped += rec.status == Status::SkippedBudget;
  }
  j["grid"] = grid;
  j["records"] = recs;
  j["edge_cases"] = edges;
  j["summary"] = {{"tuples", records.size()},
                  {"match", match},
                  {"mismatch", mismatch},
                  {"mismatch_outside_edge", mismatches(false)},
                  {"skipped_budget", skipped}};
  return j;
}

std::vector<Tuple> build_grid(const std::vector<std::string> &families,
                              const std::vector<std::uint64_t> &ls,
                              const std::vector<std::uint64_t> &qs, std::uint64_t max_n,
                              std::uint64_t nprime) {
  std::vector<Tuple> grid;
  for (const auto &name : families) {
    const Family family = resolve_family(name, "", nprime);
    for (auto l : ls) {
      if (!is_prime(l)) throw UsageError("l = " + std::to_string(l) + " is not prime");
      for (auto q : qs) {
        const auto pr = factor_prime_power(q);
        if (!pr) throw UsageError("q = " + std::to_string(q) + " is not a prime power");
        for (std::uint64_t n = 1; n <= max_n; ++n) {
          Tuple t{family, n, pr->first, pr->second, l};
          try {
            validate(t.family, t.n, t.p, t.r, t.l);
          } catch (const std::exception &) {
            continue;
          }
          grid.push_back(t);
        }
      }
    }
  }
  return grid;
}

VerifyRecord verify_tuple(const Tuple &tuple, std::uint64_t budget) {
  VerifyRecord rec;
  rec.tuple = tuple;
  const EdResult ed = essential_dimension(tuple.family, tuple.n, tuple.p, tuple.r, tuple.l);
  rec.formula_value = ed.value;
  rec.warnings = ed.warnings;
  rec.center_rank_formula =
      predicted_center_rank(tuple.family, tuple.n, tuple.p, tuple.r, tuple.l);
  rec.edge = is_lpower_edge(tuple.family, tuple.n, tuple.p, tuple.r, tuple.l);
  if (rec.edge) rec.warnings.push_back("EDGE: n is a power of l in a subtraction branch");

  const auto model = model_for(tuple);
  if (!model) {
    rec.group_order = 1;
    rec.oracle_value = 0;
    rec.center_rank_enumerated = 0;
    rec.certified = true;
  } else {
    rec.group_order = model->order();
    if (rec.group_order > budget) {
      rec.status = Status::SkippedBudget;
      return rec;
    }
    const WreathGroup group = model->build();
    const FaithfulResult fr = min_faithful_dim(group, budget);
    rec.oracle_value = fr.dim;
    rec.center_rank_enumerated = fr.center_rank;
    rec.certified = fr.certified;
    rec.witness = witness_to_json(group, fr);
    if (!fr.certified) rec.warnings.push_back("witness failed the kernel certificate");
  }
  if (rec.center_rank_enumerated && *rec.center_rank_enumerated != rec.center_rank_formula) {
    rec.warnings.push_back("center rank: predicted " + std::to_string(rec.center_rank_formula) +
                           ", enumerated " + std::to_string(*rec.center_rank_enumerated));
  }
  rec.status = *rec.oracle_value == rec.formula_value ? Status::Match : Status::Mismatch;
  return rec;
}

VerifyReport run_verify(const std::vector<Tuple> &grid, std::uint64_t budget, unsigned threads) {
  VerifyReport report;
  report.records.resize(grid.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, grid.size())));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  auto worker = [&](unsigned id) {
    try {
      for (std::size_t i = next++; i < grid.size(); i = next++) {
        report.records[i] = verify_tuple(grid[i], budget);
      }
    } catch (...) {
      errors[id] = std::current_exception();
      next = grid.size();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker, i);
  for (auto &t : pool) t.join();
  for (auto &e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return report;
}

std::vector<TableRow> concordance_rows() {
  const Family psl{FamilyTag::PSL};
  const Family sp{FamilyTag::Sp};
  const Family psp{FamilyTag::PSp};
  const Family psu{FamilyTag::PSU};
  const Family om{FamilyTag::OrthMinus};
  const Family op{FamilyTag::OrthPlus};
  return {
      {"PSL_2(F_5)", psl, 2, 5, 1, 3, 1},     {"PSL_2(F_5)", psl, 2, 5, 1, 7, 1},
      {"Sp(4,3)", sp, 4, 3, 1, 5, 1},         {"PSp(4,3)", psp, 4, 3, 1, 5, 1},
      {"PSU(4,2^2)", psu, 4, 2, 1, 5, 1},     {"PSU(4,2^2)", psu, 4, 2, 1, 3, 3},
      {"O^-(6,2)", om, 6, 2, 1, 5, 1},        {"O^-(6,2)", om, 6, 2, 1, 3, 3},
      {"Sp(6,2)", sp, 6, 2, 1, 5, 1},         {"Sp(6,2)", sp, 6, 2, 1, 3, 3},
      {"Sp(6,2)", sp, 6, 2, 1, 7, 1},         {"O^+(8,2)", op, 8, 2, 1, 3, 4},
      {"O^+(8,2)", op, 8, 2, 1, 5, 2},        {"O^+(8,2)", op, 8, 2, 1, 7, 1},
  };
}

int cmd_ed(const Options &opts, std::ostream &out, std::ostream &err) {
  return guarded(err, [&] {
    const Tuple t = tuple_from(opts);
    const EdResult ed = essential_dimension(t.family, t.n, t.p, t.r, t.l);
    switch (opts.format) {
      case Format::Json: {
        nlohmann::ordered_json j;
        j["schema_version"] = kSchemaVersion;
        j["input"] = tuple_json(t);
        j["result"] = ed.to_json();
        out << j.dump(2) << "\n";
        break;
      }
      case Format::Csv:
        out << "family,n,q,l,value,case_label,assumptions,warnings\n";
        out << csv_field(to_string(t.family)) << "," << t.n << "," << t.q() << "," << t.l << ","
            << ed.value << "," << csv_field(ed.case_label) << ","
            << csv_field(join(ed.assumptions, "; ")) << "," << csv_field(join(ed.warnings, "; "))
            << "\n";
        break;
      case Format::Text:
        out << "ed_k(" << to_string(t.family) << ", n=" << t.n << ", q=" << q_text(t.p, t.r)
            << "; l=" << t.l << ") = " << ed.value << "\n";
        out << "case: " << ed.case_label << "\n";
        out << "assumptions:\n";
        for (const auto &a : ed.assumptions) out << "  - " << a << "\n";
        if (!ed.warnings.empty()) {
          out << "warnings:\n";
          for (const auto &w : ed.warnings) out << "  - " << w << "\n";
        }
        break;
    }
    return 0;
  });
}

int cmd_sylow(const Options &opts, std::ostream &out, std::ostream &err) {
  return guarded(err, [&] {
    const Tuple t = tuple_from(opts);
    const EdResult ed = essential_dimension(t.family, t.n, t.p, t.r, t.l);
    const Reduction red = reduce(t.family, t.n, t.p, t.r, t.l);
    const SylowParams base = sylow_params(t.n, t.p, t.r, t.l);
    const auto model = model_for(t);
    const unsigned exponent = gf::group_order_l_part(t.family, t.n, t.p, t.r, t.l);

    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["input"] = tuple_json(t);
    j["d"] = base.d;
    j["reduction"] = red.label;
    j["s"] = model ? model->s : sylow_params(std::max<std::uint64_t>(red.n, 1), t.p, t.r, t.l).s;
    j["n0"] = model ? model->m : 0;
    nlohmann::ordered_json blocks = nlohmann::ordered_json::array();
    if (model && model->m > 0) {
      const BlockStructure bs = block_structure(model->m, t.l);
      for (std::size_t i = 0; i < bs.blocks.size(); ++i) {
        blocks.push_back({{"start", bs.blocks[i].start},
                          {"size", bs.block_size(i)},
                          {"size_exponent", bs.blocks[i].size_exponent}});
      }
      j["digits"] = nlohmann::ordered_json::array();
      for (unsigned k = 0; k <= mu(t.l, model->m); ++k) j["digits"].push_back(digit(model->m, t.l, k));
    } else {
      j["digits"] = nlohmann::ordered_json::array();
    }
    j["blocks"] = blocks;
    j["predicted_center_rank"] = predicted_center_rank(t.family, t.n, t.p, t.r, t.l);
    j["sylow_exponent"] = exponent;
    j["model"] = nullptr;
    if (model) {
      nlohmann::ordered_json mj;
      mj["variant"] = to_string(model->variant);
      mj["structure"] = structure_text(*model);
      mj["order"] = model->order();
      if (model->order() <= opts.budget) {
        const WreathGroup g = model->build();
        const CenterInfo c = center(g, opts.budget);
        mj["abelian"] = is_abelian(g);
        mj["center_order"] = c.order;
        mj["center_rank"] = c.rank;
      }
      j["model"] = mj;
    } else {
      j["structure"] = "trivial";
    }
    j["ed"] = ed.value;

    std::vector<std::pair<std::string, gf::Matrix>> named;
    std::string gen_error;
    bool forms_ok = true;
    if (opts.generators || opts.check_forms) {
      try {
        const gf::SylowGenerators gens = gf::sylow_generators(t.family, t.n, t.p, t.r, t.l);
        for (std::size_t i = 0; i < gens.torus.size(); ++i) {
          named.emplace_back("E" + std::to_string(i + 1), gens.torus[i]);
        }
        for (std::size_t i = 0; i < gens.permutations.size(); ++i) {
          named.emplace_back("P" + std::to_string(i + 1), gens.permutations[i]);
        }
        if (opts.check_forms) {
          for (const auto &[name, m] : named) forms_ok &= gf::form_member(m, gens.form, gens.det_one);
          j["forms"] = {{"form", gf::to_string(gens.form.kind)},
                        {"det_one", gens.det_one},
                        {"checked", named.size()},
                        {"ok", forms_ok}};
        }
        if (opts.generators) j["generators"] = gf::matrices_to_json(named);
      } catch (const UnsupportedCase &e) {
        gen_error = e.what();
        j["generators_error"] = gen_error;
      }
    }

    if (opts.format == Format::Json) {
      out << j.dump(2) << "\n";
    } else if (opts.format == Format::Csv) {
      out << "family,n,q,l,d,s,n0,blocks,predicted_center_rank,sylow_exponent,ed\n";
      std::vector<std::string> sizes;
      for (const auto &b : blocks) sizes.push_back(std::to_string(b["size"].get<std::uint64_t>()));
      out << csv_field(to_string(t.family)) << "," << t.n << "," << t.q() << "," << t.l << ","
          << j["d"] << "," << j["s"] << "," << j["n0"] << "," << join(sizes, " ") << ","
          << j["predicted_center_rank"] << "," << exponent << "," << ed.value << "\n";
    } else {
      out << to_string(t.family) << ", n=" << t.n << ", q=" << q_text(t.p, t.r) << ", l=" << t.l
          << "\n";
      out << "d = " << base.d << "\n";
      out << "reduction: " << red.label << "\n";
      out << "s = " << j["s"] << ", n0 = " << j["n0"] << "\n";
      std::vector<std::string> sizes;
      for (const auto &b : blocks) sizes.push_back(std::to_string(b["size"].get<std::uint64_t>()));
      out << "blocks: [" << join(sizes, ", ") << "]\n";
      out << "predicted center rank: " << j["predicted_center_rank"] << "\n";
      out << "Sylow order: " << t.l << "^" << exponent << "\n";
      if (model) {
        out << "structure: " << structure_text(*model) << " (" << to_string(model->variant)
            << " model, order " << model->order() << ")\n";
        const auto &mj = j["model"];
        if (mj.contains("center_rank")) {
          out << "abelian: " << (mj["abelian"].get<bool>() ? "yes" : "no") << "\n";
          out << "enumerated center: order " << mj["center_order"] << ", rank "
              << mj["center_rank"] << "\n";
        }
      } else {
        out << "structure: trivial\n";
      }
      out << "ed = " << ed.value << "\n";
      if (!gen_error.empty()) out << "generators: unavailable (" << gen_error << ")\n";
      if (opts.check_forms && gen_error.empty()) {
        out << "forms: " << (forms_ok ? "ok" : "FAILED") << " (" << named.size() << " generators, "
            << j["forms"]["form"].get<std::string>() << ")\n";
      }
      if (opts.generators && gen_error.empty()) out << j["generators"].dump(2) << "\n";
    }
    return forms_ok ? 0 : 3;
  });
}

int cmd_verify(const Options &opts, std::ostream &out, std::ostream &err) {
  return guarded(err, [&] {
    if (opts.budget == 0) throw UsageError("--budget must be positive");
    std::vector<Tuple> grid;
    if (!opts.family.empty() && opts.n != 0) {
      grid.push_back(tuple_from(opts));
      validate(grid[0].family, grid[0].n, grid[0].p, grid[0].r, grid[0].l);
    } else {
      grid = build_grid(opts.families, opts.ls, opts.qs, opts.max_n, opts.nprime);
    }
    const VerifyReport report = run_verify(grid, opts.budget, opts.threads);

    if (opts.format == Format::Json) {
      out << report.to_json().dump(2) << "\n";
    } else if (opts.format == Format::Csv) {
      out << "family,n,q,p,r,l,formula_value,oracle_value,center_rank_formula,"
             "center_rank_enumerated,group_order,edge,certified,status,warnings\n";
      for (const auto &rec : report.records) {
        const Tuple &t = rec.tuple;
        out << csv_field(to_string(t.family)) << "," << t.n << "," << t.q() << "," << t.p << ","
            << t.r << "," << t.l << "," << rec.formula_value << ","
            << (rec.oracle_value ? std::to_string(*rec.oracle_value) : "") << ","
            << rec.center_rank_formula << ","
            << (rec.center_rank_enumerated ? std::to_string(*rec.center_rank_enumerated) : "")
            << "," << rec.group_order << "," << (rec.edge ? 1 : 0) << ","
            << (rec.certified ? 1 : 0) << "," << to_string(rec.status) << ","
            << csv_field(join(rec.warnings, "; ")) << "\n";
      }
    } else {
      std::size_t match = 0, mismatch = 0, skipped = 0;
      for (const auto &rec : report.records) {
        const Tuple &t = rec.tuple;
        out << to_string(t.family) << " n=" << t.n << " q=" << t.q() << " l=" << t.l
            << ": formula " << rec.formula_value << ", oracle "
            << (rec.oracle_value ? std::to_string(*rec.oracle_value) : "-") << ", center rank "
            << rec.center_rank_formula << "/"
            << (rec.center_rank_enumerated ? std::to_string(*rec.center_rank_enumerated) : "-")
            << ", " << to_string(rec.status) << (rec.edge ? " [edge]" : "") << "\n";
        match += rec.status == Status::Match;
        mismatch += rec.status == Status::Mismatch;
        skipped += rec.status == Status::SkippedBudget;
      }
      out << "edge cases:\n";
      for (const auto &rec : report.records) {
        if (!rec.edge) continue;
        const Tuple &t = rec.tuple;
        out << "  " << to_string(t.family) << " n=" << t.n << " q=" << t.q() << " l=" << t.l
            << ": formula " << rec.formula_value << ", oracle "
            << (rec.oracle_value ? std::to_string(*rec.oracle_value) : "-") << "\n";
      }
      out << report.records.size() << " tuples: " << match << " match, " << mismatch
          << " mismatch (" << report.mismatches(false) << " outside edge cases), " << skipped
          << " skipped\n";
    }
    return report.mismatches(opts.strict) == 0 ? 0 : 3;
  });
}

int cmd_table(const Options &opts, std::ostream &out, std::ostream &err) {
  return guarded(err, [&] {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    bool all = true;
    std::ostringstream text;
    for (const auto &row : concordance_rows()) {
      const EdResult ed = essential_dimension(row.family, row.n, row.p, row.r, row.l);
      const bool pass = ed.value == row.expected;
      all &= pass;
      rows.push_back({{"group", row.group},
                      {"family", to_string(row.family)},
                      {"n", row.n},
                      {"q", Tuple{row.family, row.n, row.p, row.r, row.l}.q()},
                      {"l", row.l},
                      {"computed", ed.value},
                      {"expected", row.expected},
                      {"pass", pass},
                      {"case_label", ed.case_label},
                      {"warnings", ed.warnings}});
    }
    if (opts.format == Format::Json) {
      nlohmann::ordered_json j;
      j["schema_version"] = kSchemaVersion;
      j["rows"] = rows;
      j["all_pass"] = all;
      out << j.dump(2) << "\n";
    } else if (opts.format == Format::Csv) {
      out << "group,l,computed,expected,pass\n";
      for (const auto &r : rows) {
        out << r["group"].get<std::string>() << "," << r["l"] << "," << r["computed"] << ","
            << r["expected"] << "," << (r["pass"].get<bool>() ? "pass" : "FAIL") << "\n";
      }
    } else {
      out << "group         l  computed  expected  result\n";
      for (const auto &r : rows) {
        std::string g = r["group"].get<std::string>();
        g.resize(12, ' ');
        out << g << "  " << r["l"] << "  " << std::setw(8) << r["computed"].get<std::uint64_t>()
            << "  " << std::setw(8) << r["expected"].get<std::uint64_t>() << "  "
            << (r["pass"].get<bool>() ? "pass" : "FAIL") << "\n";
      }
    }
    return all ? 0 : 3;
  });
}

int run(int argc, char **argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Essential l-dimension of finite classical groups"};
  app.require_subcommand(1);
  Options opts;
  std::string format = "text";

  auto add_common = [&](CLI::App *sub) {
    sub->add_option("--family", opts.family,
                    "GL, SL, PSL, SLQuotient, Sp, PSp, O, POmega, OrthPlus, ..., U, SU, PSU");
    sub->add_option("--n", opts.n, "rank (matrix dimension)");
    sub->add_option("--q", opts.q, "field order, a prime power");
    sub->add_option("--p", opts.p, "field characteristic");
    sub->add_option("--r", opts.r, "q = p^r");
    sub->add_option("--l", opts.l, "the prime l");
    sub->add_option("--nprime", opts.nprime, "n' for SLQuotient");
    sub->add_option("--epsilon", opts.epsilon, "orthogonal type: +, - or odd");
    sub->add_option("--format", format, "text, json or csv");
    sub->add_option("--budget", opts.budget, "element budget for exhaustive enumeration");
  };
  CLI::App *ed = app.add_subcommand("ed", "evaluate the closed-form essential l-dimension");
  add_common(ed);
  CLI::App *sylow = app.add_subcommand("sylow", "describe the Sylow l-subgroup");
  add_common(sylow);
  sylow->add_flag("--check-forms", opts.check_forms, "re-verify generator form membership");
  sylow->add_flag("--generators", opts.generators, "dump the matrix generators");
  CLI::App *verify = app.add_subcommand("verify", "check the formulas against the group oracle");
  add_common(verify);
  verify->add_flag("--strict", opts.strict, "edge-case mismatches fail the run");
  verify->add_option("--families", opts.families, "grid families")->delimiter(',');
  verify->add_option("--ls", opts.ls, "grid primes l")->delimiter(',');
  verify->add_option("--qs", opts.qs, "grid field orders")->delimiter(',');
  verify->add_option("--max-n", opts.max_n, "grid bound on n");
  verify->add_option("--threads", opts.threads, "worker threads (0: all cores)");
  CLI::App *table = app.add_subcommand("table", "reproduce the concordance table");
  table->add_option("--format", format, "text, json or csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError &e) {
    app.exit(e, out, err);
    return 1;
  }
  try {
    opts.format = parse_format(format);
  } catch (const UsageError &e) {
    err << "usage error: " << e.what() << "\n";
    return 1;
  }
  if (ed->parsed()) return cmd_ed(opts, out, err);
  if (sylow->parsed()) return cmd_sylow(opts, out, err);
  if (verify->parsed()) return cmd_verify(opts, out, err);
  return cmd_table(opts, out, err);
}

}  // namespace essdim::cli
