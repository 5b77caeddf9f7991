// The nine labelled machines that rebuild the powers-of-two decider on the zipper tape.

#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "decider_lab/combinator.hpp"

namespace decider_lab::comb {

struct M2Combinators {
  Machine even;                    // q2
  Machine odd;                     // q3
  Machine even_odd;                // q2, q3
  Machine rewind;                  // q4
  Machine odd1;                    // q1
  Machine even0;                   // q0
  Machine even0_odd1;              // q0, q1
  Machine even0_odd1_even_odd;     // q0 .. q3
  Machine sipser_m2;               // q0 .. q4, labels Accept / Reject

  /// In declaration order, with their names.
  std::array<std::pair<const char*, const Machine*>, 9> all() const;
};

enum class Fault : std::uint8_t { None, SwapAcceptReject };

/// Fresh construction each call; `fault` rewires the outermost ToAccept/ToReject branches.
M2Combinators build_m2_combinators(Fault fault = Fault::None);

/// Shared instance of the unfaulted set.
const M2Combinators& m2_combinators();

inline constexpr std::array<std::uint64_t, 9> kExpectedStateCounts = {10, 11, 22, 10, 11, 8, 20, 44, 56};

Label accept_label();
Label reject_label();

/// Generous bound on primitive actions for input 0^n.
std::uint64_t default_comb_fuel(std::size_t n);

struct RealizationResult {
  bool ok = false;
  bool accepted = false;        // combinator verdict
  bool expected = false;        // isPowerOf2(n)
  bool monolithic = false;      // the transition-table machine's verdict
  std::uint64_t actions = 0;
  std::uint64_t overflow_writes = 0;
  std::string error;            // set when the run failed outright
};

/// Runs `m` on 0^n and compares its label with isPowerOf2(n) and with the
/// table machine on the same input. Fuel exhaustion is a failure, not a throw.
RealizationResult realization_check(const Machine& m, std::size_t n, std::uint64_t fuel);
RealizationResult realization_check(std::size_t n);

}  // namespace decider_lab::comb
