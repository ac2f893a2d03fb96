#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "essdim/family.hpp"
#include "essdim/wreath.hpp"

namespace essdim::cli {

enum class Format { Text, Json, Csv };

Format parse_format(const std::string &name);

// Parsed command-line parameters shared by the subcommands.
struct Options {
  std::string family;
  std::uint64_t n = 0;
  std::uint64_t q = 0;
  std::uint64_t p = 0;
  unsigned r = 0;
  std::uint64_t l = 0;
  std::uint64_t nprime = 1;
  std::string epsilon;
  Format format = Format::Text;
  std::uint64_t budget = kDefaultBudget;
  bool strict = false;
  bool check_forms = false;
  bool generators = false;

  // verify grid
  std::vector<std::string> families{"GL", "SL", "PSL"};
  std::vector<std::uint64_t> ls{2, 3, 5};
  std::vector<std::uint64_t> qs{3, 4, 5, 7, 8, 9};
  std::uint64_t max_n = 6;
  unsigned threads = 0;  // 0: hardware concurrency
};

// Thrown for malformed invocations (exit code 1).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// q = p^r, or std::nullopt when q is not a prime power.
std::optional<std::pair<std::uint64_t, unsigned>> factor_prime_power(std::uint64_t q);

// Family from --family (plus --epsilon for "O"/"POmega" and --nprime).
Family resolve_family(const std::string &name, const std::string &epsilon, std::uint64_t nprime);
// (p, r) from --q or --p/--r.
std::pair<std::uint64_t, unsigned> resolve_field(const Options &opts);

struct Tuple {
  Family family;
  std::uint64_t n = 0;
  std::uint64_t p = 0;
  unsigned r = 0;
  std::uint64_t l = 0;

  std::uint64_t q() const;
};

// The wreath model of the Sylow l-subgroup reached through the family's
// reduction to a linear group; std::nullopt when the Sylow is trivial.
struct ModelSpec {
  std::uint64_t l = 0;
  unsigned s = 0;
  std::size_t m = 0;
  WreathVariant variant = WreathVariant::GL;
  int t = -1;

  std::uint64_t order() const;
  WreathGroup build() const;
};

std::optional<ModelSpec> model_for(const Tuple &tuple);

enum class Status { Match, Mismatch, SkippedBudget };

std::string to_string(Status status);

struct VerifyRecord {
  Tuple tuple;
  std::uint64_t formula_value = 0;
  std::optional<std::uint64_t> oracle_value;
  std::uint64_t center_rank_formula = 0;
  std::optional<unsigned> center_rank_enumerated;
  std::uint64_t group_order = 0;
  bool edge = false;  // n a power of l in a subtraction branch
  bool certified = false;
  Status status = Status::SkippedBudget;
  std::vector<std::string> warnings;
  nlohmann::ordered_json witness;
};

struct VerifyReport {
  std::vector<VerifyRecord> records;

  std::size_t mismatches(bool include_edge) const;
  nlohmann::ordered_json to_json() const;
};

// Grid tuples in a fixed order; tuples rejected by validation are left out.
std::vector<Tuple> build_grid(const std::vector<std::string> &families,
                              const std::vector<std::uint64_t> &ls,
                              const std::vector<std::uint64_t> &qs, std::uint64_t max_n,
                              std::uint64_t nprime = 1);

VerifyRecord verify_tuple(const Tuple &tuple, std::uint64_t budget);
// Runs the tuples on a worker pool; records come back in grid order.
VerifyReport run_verify(const std::vector<Tuple> &grid, std::uint64_t budget, unsigned threads);

struct TableRow {
  std::string group;
  Family family;
  std::uint64_t n = 0;
  std::uint64_t p = 0;
  unsigned r = 0;
  std::uint64_t l = 0;
  std::uint64_t expected = 0;
};

// The classical-group values of the pseudo-reflection concordance.
std::vector<TableRow> concordance_rows();

int cmd_ed(const Options &opts, std::ostream &out, std::ostream &err);
int cmd_sylow(const Options &opts, std::ostream &out, std::ostream &err);
int cmd_verify(const Options &opts, std::ostream &out, std::ostream &err);
int cmd_table(const Options &opts, std::ostream &out, std::ostream &err);

// Parses argv (subcommand first) and dispatches.
int run(int argc, char **argv, std::ostream &out, std::ostream &err);

}  // namespace essdim::cli
