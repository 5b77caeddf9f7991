// The CLI subcommands as library functions writing to caller-supplied streams.

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "decider_lab/trace.hpp"
#include "decider_lab/verify.hpp"

namespace decider_lab::cli {

enum ExitCode : int { kOk = 0, kReject = 1, kBadInput = 2, kEngineError = 3, kViolation = 4 };

/// --fuel beats DECIDER_LAB_FUEL beats 100 * (n + 2)^2. `env` may be null.
/// Throws std::invalid_argument on a zero or malformed value.
std::uint64_t resolve_fuel(std::optional<std::uint64_t> flag, const char* env, std::size_t n);

/// Parses "paren" / "m2"; nullopt otherwise.
std::optional<verify::MachineKind> parse_machine(std::string_view name);

struct RunArgs {
  verify::MachineKind machine = verify::MachineKind::Paren;
  std::optional<std::string> input;
  std::optional<std::uint64_t> n;  // m2 only: 0^n
  std::optional<std::uint64_t> fuel;
  const char* fuel_env = nullptr;  // value of DECIDER_LAB_FUEL, if set
};

struct TraceArgs {
  RunArgs run;
  trace::Format format = trace::Format::Text;
  bool ghost = false;
  bool variant = false;
};

struct VerifyArgs {
  verify::MachineKind machine = verify::MachineKind::Paren;
  std::size_t max_len = 0;
  std::vector<std::uint64_t> samples;
  std::string checks = "all";
  std::optional<std::string> mutate;
  std::optional<std::uint64_t> fuel;
  const char* fuel_env = nullptr;
  unsigned jobs = 1;
  std::size_t max_findings = 10;
};

struct EquivArgs {
  std::uint64_t max_n = 0;
  std::vector<std::uint64_t> samples;
  bool swap_accept_reject = false;
};

struct LemmaArgs {
  std::uint64_t max_n = 2;
  std::size_t paren_len = 10;
  std::optional<std::string> inject;  // "even-pred": even lemma against n-1 instead of n/2
};

int cmd_run(const RunArgs& a, std::ostream& out, std::ostream& err);
int cmd_trace(const TraceArgs& a, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err);
int cmd_equiv_combinator(const EquivArgs& a, std::ostream& out, std::ostream& err);
int cmd_lemmas(const LemmaArgs& a, std::ostream& out, std::ostream& err);

}  // namespace decider_lab::cli
