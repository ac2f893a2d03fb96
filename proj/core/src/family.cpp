#include "essdim/family.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <stdexcept>
#include <utility>

namespace essdim {

namespace {

constexpr std::array<std::pair<FamilyTag, const char *>, 15> kNames{{
    {FamilyTag::GL, "GL"},
    {FamilyTag::SL, "SL"},
    {FamilyTag::PSL, "PSL"},
    {FamilyTag::SLQuotient, "SLQuotient"},
    {FamilyTag::Sp, "Sp"},
    {FamilyTag::PSp, "PSp"},
    {FamilyTag::OrthOdd, "OrthOdd"},
    {FamilyTag::OrthPlus, "OrthPlus"},
    {FamilyTag::OrthMinus, "OrthMinus"},
    {FamilyTag::POmegaOdd, "POmegaOdd"},
    {FamilyTag::POmegaPlus, "POmegaPlus"},
    {FamilyTag::POmegaMinus, "POmegaMinus"},
    {FamilyTag::U, "U"},
    {FamilyTag::SU, "SU"},
    {FamilyTag::PSU, "PSU"},
}};

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::string to_string(FamilyTag tag) {
  for (const auto &[t, name] : kNames) {
    if (t == tag) return name;
  }
  throw std::invalid_argument("unknown family tag");
}

std::string to_string(const Family &family) {
  if (family.tag == FamilyTag::SLQuotient) {
    return "SLQuotient(" + std::to_string(family.nprime) + ")";
  }
  return to_string(family.tag);
}

FamilyTag parse_family_tag(std::string_view name) {
  std::string key = lower(name);
  for (const auto &[t, n] : kNames) {
    if (lower(n) == key) return t;
  }
  throw std::invalid_argument("unknown family '" + std::string(name) + "'");
}

bool is_linear(FamilyTag tag) {
  return tag == FamilyTag::GL || tag == FamilyTag::SL || tag == FamilyTag::PSL ||
         tag == FamilyTag::SLQuotient;
}

bool is_symplectic(FamilyTag tag) { return tag == FamilyTag::Sp || tag == FamilyTag::PSp; }

bool is_orthogonal(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::OrthOdd:
    case FamilyTag::OrthPlus:
    case FamilyTag::OrthMinus:
    case FamilyTag::POmegaOdd:
    case FamilyTag::POmegaPlus:
    case FamilyTag::POmegaMinus:
      return true;
    default:
      return false;
  }
}

bool is_unitary(FamilyTag tag) {
  return tag == FamilyTag::U || tag == FamilyTag::SU || tag == FamilyTag::PSU;
}

Epsilon orthogonal_type(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::OrthOdd:
    case FamilyTag::POmegaOdd:
      return Epsilon::Odd;
    case FamilyTag::OrthPlus:
    case FamilyTag::POmegaPlus:
      return Epsilon::Plus;
    case FamilyTag::OrthMinus:
    case FamilyTag::POmegaMinus:
      return Epsilon::Minus;
    default:
      throw std::invalid_argument("not an orthogonal family");
  }
}

UnitaryVariant unitary_variant(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::U:
      return UnitaryVariant::U;
    case FamilyTag::SU:
      return UnitaryVariant::SU;
    case FamilyTag::PSU:
      return UnitaryVariant::PSU;
    default:
      throw std::invalid_argument("not a unitary family");
  }
}

}  // namespace essdim
