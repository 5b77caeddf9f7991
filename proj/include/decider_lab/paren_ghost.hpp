// Ghost state, invariants, variant and postconditions for the parentheses machine.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>

#include "decider_lab/accumulated.hpp"
#include "decider_lab/machines.hpp"
#include "decider_lab/variant.hpp"
#include "decider_lab/violation.hpp"

namespace decider_lab::ghost {

/// k: parentheses fully handled. s: stack symbols on the tape.
/// lp/rp: parentheses seen by the head; s_p = lp - rp, k_p = lp + rp.
/// Signed so that a broken machine shows up as a negative value, not a wrap.
struct ParenGhost {
  std::int64_t k = 0;
  std::int64_t s = 0;
  std::int64_t s_p = 0;
  std::int64_t k_p = 0;
  std::int64_t lp = 0;
  std::int64_t rp = 0;

  bool operator==(const ParenGhost&) const = default;
};

std::string render(const ParenGhost& g);

ParenGhost paren_ghost_update(GhostEvent event, ParenGhost g);

/// Input, then s stack symbols, then blanks. Throws std::logic_error unless
/// |tape| == 2|input|+1 and 0 <= s <= |input|.
bool tape_contents_without_x(const tm::Word& input, std::span<const tm::SymbolId> tape, std::int64_t s);

/// As above but with tape[k] == X standing in for input[k] == paren.
/// Additionally requires 0 <= k < |input|.
bool tape_contents_with_x_replacing(tm::SymbolId paren, const tm::Word& input,
                                    std::span<const tm::SymbolId> tape, std::int64_t k, std::int64_t s);

/// Global and per-state invariant catalogue; empty means every clause held.
Violations paren_check_invariants(const tm::Configuration& c, const ParenGhost& g, const tm::Word& input);

enum class RejectRoute : std::uint8_t { ViaQ0, ViaQ4 };

/// Which q_rej disjunct holds (via q0 is tried first); nullopt if neither does
/// or c is not in q_rej.
std::optional<RejectRoute> paren_reject_route(const tm::Configuration& c, const ParenGhost& g,
                                              const tm::Word& input);

int order_q(tm::StateId state);

/// (|a| - k, 3 - orderQ(q), t.Length - p in q1/q3 else p)
VariantTuple paren_variant(const tm::Configuration& c, const ParenGhost& g, const tm::Word& input);

/// Tape-contents postconditions. Throws std::logic_error if c is not halted.
Violations paren_check_final(const tm::Configuration& c, const ParenGhost& g, const tm::Word& input);

/// Attaches to a run: updates the ghost on every step and checks every configuration.
class ParenHarness : public tm::RunObserver {
 public:
  ParenHarness(const tm::Word& input, HarnessOptions opts = {});

  void on_configuration(const tm::Configuration& c) override;
  void on_step(const tm::StepEvent& e, const tm::Configuration& after) override;

  const ParenGhost& ghost() const { return ghost_; }
  const std::optional<VariantTuple>& last_variant() const { return last_variant_; }

  const Violations& violations() const { return violations_; }
  std::uint64_t violation_count() const { return violation_count_; }
  /// Violation counts keyed by invariant family (Violation::expected).
  const std::map<std::string, std::uint64_t>& violations_by_family() const { return by_family_; }
  std::uint64_t configurations() const { return configurations_; }
  std::uint64_t variant_pairs() const { return variant_pairs_; }
  std::optional<RejectRoute> reject_route() const { return reject_route_; }
  /// Largest index whose symbol was changed by a write, if any.
  std::optional<std::size_t> max_changed_index() const { return max_changed_index_; }
  const std::vector<AccumulatedEntry>& accumulated_trace() const { return accumulated_; }

 private:
  void record(Violations&& vs);

  tm::Word input_;
  HarnessOptions opts_;
  ParenGhost ghost_;
  std::optional<VariantTuple> last_variant_;
  Violations violations_;
  std::uint64_t violation_count_ = 0;
  std::map<std::string, std::uint64_t> by_family_;
  std::uint64_t configurations_ = 0;
  std::uint64_t variant_pairs_ = 0;
  std::optional<RejectRoute> reject_route_;
  std::optional<std::size_t> max_changed_index_;
  std::vector<AccumulatedEntry> accumulated_;
};

}  // namespace decider_lab::ghost
