// Trace-level check of the accumulated-invariant argument: if I(k) held each time
// the counter k reached a new value, then "I(j) for all j <= k" holds too.

#pragma once

#include <cstdint>
#include <span>

namespace decider_lab::ghost {

struct AccumulatedEntry {
  std::int64_t k = 0;
  bool pointwise = false;    // I(k)
  bool accumulated = false;  // the claimed value of forall j <= k: I(j)
};

/// True iff the trace is well formed (k starts at 0, never decreases, grows by
/// at most 1, I(k) is stable while k is) and every claimed accumulated value
/// equals the conjunction of I over the values k has taken so far.
/// The empty trace passes.
bool accumulated_invariant_check(std::span<const AccumulatedEntry> trace);

}  // namespace decider_lab::ghost
