#include "decider_lab/accumulated.hpp"

namespace decider_lab::ghost {

bool accumulated_invariant_check(std::span<const AccumulatedEntry> trace) {
  if (trace.empty()) return true;
  if (trace.front().k != 0) return false;
  bool conjunction = trace.front().pointwise;
  std::int64_t k = 0;
  bool pointwise_at_k = trace.front().pointwise;
  for (const auto& e : trace) {
    if (e.k == k + 1) {
      k = e.k;
      pointwise_at_k = e.pointwise;
      conjunction = conjunction && e.pointwise;
    } else if (e.k != k) {
      return false;
    } else if (e.pointwise != pointwise_at_k) {
      return false;
    }
    if (e.accumulated != conjunction) return false;
  }
  return true;
}

}  // namespace decider_lab::ghost
