#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "decider_lab/tm_core.hpp"

namespace decider_lab::ghost {

/// One failed clause at one configuration.
struct Violation {
  std::uint64_t step = 0;
  std::string state;
  std::string clause;    // e.g. "q_acc: 0 == s"
  std::string expected;  // the invariant family the clause belongs to
  std::string actual;    // the values that made it fail

  bool operator==(const Violation&) const = default;
};

using Violations = std::vector<Violation>;

/// Which families a harness evaluates.
struct HarnessOptions {
  bool invariants = true;
  bool variant = true;
  bool final_checks = true;     // halting postconditions (parentheses only)
  bool lemmas = true;           // snapshot / write-locality assertions (M2 only)
  bool cross_check = false;     // M2: also evaluate by full scan and compare
  std::size_t max_recorded = 32;  // violations kept verbatim; all are counted
};

/// (pre-state, symbol read) of a fired transition; ghost updates key on this.
struct GhostEvent {
  tm::StateId state;
  tm::SymbolId read;
};

}  // namespace decider_lab::ghost
