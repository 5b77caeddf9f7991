// Exhaustive verification over all small inputs, with the ghost harness attached.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "decider_lab/tm_core.hpp"
#include "decider_lab/violation.hpp"

namespace decider_lab::verify {

enum class MachineKind { Paren, M2 };

const tm::MachineDef& machine_for(MachineKind k);

struct Checks {
  bool invariants = true;  // per-configuration catalogue (and the accumulated trace check)
  bool variant = true;     // lexicographic decrease; fuel exhaustion counts here
  bool bounds = true;      // tape bound, head range, final head; overruns count here
  bool final_checks = true;  // halting postconditions
  bool oracle = true;      // decision against the reference deciders
  bool dead = true;        // dead transitions count as violations

  static Checks all() { return {}; }
  static Checks none() { return {false, false, false, false, false, false}; }
  /// Comma-separated names; throws std::invalid_argument on an unknown one.
  static Checks parse(std::string_view list);
};

/// One table entry replaced: "q2,x:q0,(,L" or "q2,x:dead".
struct Mutation {
  tm::StateId state = 0;
  tm::SymbolId symbol = 0;
  std::optional<tm::Transition> replacement;

  /// Throws std::invalid_argument on malformed text.
  static Mutation parse(const tm::MachineDef& m, std::string_view text);
  std::string str(const tm::MachineDef& m) const;
};

struct VerifyOptions {
  MachineKind machine = MachineKind::Paren;
  std::size_t max_len = 0;
  std::vector<std::uint64_t> samples;  // extra lengths (m2) or ignored (paren)
  Checks checks;
  std::optional<std::uint64_t> fuel;   // per run; default_fuel(n) otherwise
  unsigned jobs = 1;
  std::optional<Mutation> mutation;
  bool lemmas = true;                  // M2 snapshot / write-locality assertions
  std::size_t max_findings = 10;
};

/// Every input of length <= n in length-then-lexicographic order (LP < RP).
std::vector<tm::Word> paren_words(std::size_t max_len);

struct Finding {
  std::string input;
  ghost::Violation violation;
};

struct VerifySummary {
  std::uint64_t runs = 0;
  std::uint64_t accepted = 0;
  std::uint64_t rejected = 0;
  std::uint64_t configurations = 0;
  std::uint64_t variant_pairs = 0;
  std::uint64_t total_steps = 0;
  std::uint64_t max_steps = 0;
  std::uint64_t violations = 0;
  std::uint64_t engine_errors = 0;  // errors not covered by an enabled check
  std::uint64_t dead_transitions = 0;
  std::uint64_t tape_overruns = 0;
  std::uint64_t fuel_exhausted = 0;
  std::uint64_t oracle_mismatches = 0;
  std::uint64_t reject_via_q0 = 0;
  std::uint64_t reject_via_q4 = 0;
  std::uint64_t accumulated_traces = 0;
  std::uint64_t write_locality = 0;
  std::uint64_t num_zeroes = 0;
  std::uint64_t only_zeroes = 0;
  // M2 runs in which each assertion kind fired at least once
  std::uint64_t runs_write_locality = 0;
  std::uint64_t runs_num_zeroes = 0;
  std::uint64_t runs_only_zeroes = 0;
  std::map<std::string, std::uint64_t> by_family;  // violations per invariant family
  std::vector<Finding> findings;             // first few, in enumeration order

  bool ok() const { return violations == 0 && engine_errors == 0; }
  /// 0 ok, 4 violations, 3 engine errors only.
  int exit_code() const;
};

VerifySummary run_verify(const VerifyOptions& opts);

std::string render_summary(const VerifyOptions& opts, const VerifySummary& s);

}  // namespace decider_lab::verify
