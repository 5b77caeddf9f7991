#include "decider_lab/variant.hpp"

#include <stdexcept>

namespace decider_lab::ghost {

VariantVerdict compare_variants(const VariantTuple& prev, const VariantTuple& next) {
  if (prev.components.size() != next.components.size())
    throw std::invalid_argument("compare_variants: arity mismatch");
  for (std::size_t i = 0; i < prev.components.size(); ++i) {
    const auto& a = prev.components[i];
    const auto& b = next.components[i];
    if (!a || !b) return VariantVerdict::Blocked;
    if (*a == *b) continue;
    if (*b > *a) return VariantVerdict::NotDecreased;
    return *b >= 0 ? VariantVerdict::Decreased : VariantVerdict::WentNegative;
  }
  return VariantVerdict::NotDecreased;
}

bool variant_decreases(const VariantTuple& prev, const VariantTuple& next) {
  return compare_variants(prev, next) == VariantVerdict::Decreased;
}

const char* to_string(VariantVerdict v) {
  switch (v) {
    case VariantVerdict::Decreased: return "decreased";
    case VariantVerdict::NotDecreased: return "not decreased";
    case VariantVerdict::WentNegative: return "went negative";
    case VariantVerdict::Blocked: return "blocked by not-applicable component";
  }
  return "?";
}

std::string render(const VariantTuple& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.components.size(); ++i) {
    if (i) out += ", ";
    out += v.components[i] ? std::to_string(*v.components[i]) : "-";
  }
  out += ")";
  return out;
}

}  // namespace decider_lab::ghost
