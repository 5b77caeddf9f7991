// Lexicographic termination measures with "not applicable" components.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace decider_lab::ghost {

/// nullopt marks a component that does not apply in the current control state.
using VariantComponent = std::optional<std::int64_t>;

struct VariantTuple {
  std::vector<VariantComponent> components;

  bool operator==(const VariantTuple&) const = default;
};

enum class VariantVerdict : std::uint8_t {
  Decreased,      // first deciding component went down and stayed >= 0
  NotDecreased,   // equal tuples, or the deciding component went up
  WentNegative,   // decreased below zero
  Blocked,        // a not-applicable component was reached before any decision
};

/// Scans left to right; the first position where both are applicable and differ decides.
VariantVerdict compare_variants(const VariantTuple& prev, const VariantTuple& next);

bool variant_decreases(const VariantTuple& prev, const VariantTuple& next);

const char* to_string(VariantVerdict v);

/// "(2, 3, 0)" with "-" for not-applicable components.
std::string render(const VariantTuple& v);

}  // namespace decider_lab::ghost
