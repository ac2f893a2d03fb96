#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace essdim {

enum class FamilyTag {
  GL,
  SL,
  PSL,
  SLQuotient,
  Sp,
  PSp,
  OrthOdd,
  OrthPlus,
  OrthMinus,
  POmegaOdd,
  POmegaPlus,
  POmegaMinus,
  U,
  SU,
  PSU,
};

struct Family {
  FamilyTag tag = FamilyTag::GL;
  std::uint64_t nprime = 1;  // only read for SLQuotient

  friend bool operator==(const Family &, const Family &) = default;
};

enum class Epsilon { Plus, Minus, Odd };
enum class UnitaryVariant { U, SU, PSU };

std::string to_string(FamilyTag tag);
std::string to_string(const Family &family);

// Accepts the tag names above, case-insensitively.
FamilyTag parse_family_tag(std::string_view name);

bool is_linear(FamilyTag tag);
bool is_symplectic(FamilyTag tag);
bool is_orthogonal(FamilyTag tag);
bool is_unitary(FamilyTag tag);
Epsilon orthogonal_type(FamilyTag tag);
UnitaryVariant unitary_variant(FamilyTag tag);

}  // namespace essdim
