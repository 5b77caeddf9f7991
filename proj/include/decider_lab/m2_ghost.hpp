// Ghost snapshot, invariant catalogue I0-I10 and variant for the powers-of-two machine.
//
// The catalogue is written once over a "view" of the configuration. The full view
// scans the tape literally; the tracker keeps prefix counts and a mismatch set so a
// harness can check every configuration of a long run cheaply.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "decider_lab/machines.hpp"
#include "decider_lab/variant.hpp"
#include "decider_lab/violation.hpp"

namespace decider_lab::ghost {

/// snap is absent until the first (q0, Z) step.
struct M2Ghost {
  std::optional<std::vector<tm::SymbolId>> snap;

  bool operator==(const M2Ghost&) const = default;
};

/// Positions j < i holding B or Z. Throws std::out_of_range if i > |tape|.
std::int64_t num_z_tape(std::span<const tm::SymbolId> tape, std::size_t i);
std::int64_t num_z_snap(std::span<const tm::SymbolId> snap, std::size_t i);

/// Takes a snapshot of the post-write tape on (q0, Z) and (q4, B).
M2Ghost m2_ghost_update(GhostEvent event, M2Ghost g, std::span<const tm::SymbolId> post_write_tape);

bool m2_takes_snapshot(GhostEvent event);

/// Full catalogue by literal scans; n is the input length.
Violations m2_check_invariants(const tm::Configuration& c, const M2Ghost& g, std::size_t n);

/// (q == q0, numZSnap(snap, n), phase, head distance); "-" components do not apply.
VariantTuple m2_variant(const tm::Configuration& c, const M2Ghost& g, std::size_t n);

/// Prefix sums over a 0/1 array with point updates.
class Fenwick {
 public:
  explicit Fenwick(std::size_t size = 0) : tree_(size + 1, 0) {}
  void add(std::size_t i, std::int64_t delta);
  std::int64_t prefix(std::size_t i) const;  // sum over [0, i)
  std::size_t size() const { return tree_.size() - 1; }

 private:
  std::vector<std::int64_t> tree_;
};

/// Incremental mirror of the quantities the catalogue needs.
class M2Tracker {
 public:
  M2Tracker() = default;
  M2Tracker(const tm::Configuration& c, const M2Ghost& g, std::size_t n);

  void on_write(std::size_t position, tm::SymbolId before, tm::SymbolId after);
  void on_snapshot(std::span<const tm::SymbolId> snap);

  std::size_t n() const { return n_; }
  std::int64_t z_tape(std::size_t i) const { return z_tape_.prefix(i); }
  bool has_snap() const { return has_snap_; }
  std::size_t snap_len() const { return snap_.size(); }
  std::int64_t z_snap(std::size_t i) const { return snap_prefix_.at(i); }
  /// No index in [lo, hi) where tape and snapshot differ.
  bool snap_agrees(std::size_t lo, std::size_t hi) const;
  /// Cells 1 <= i < n outside {Z, X}.
  std::size_t bad_middle() const { return bad_middle_; }
  /// Cells i < n other than Z.
  std::size_t non_zero_prefix() const { return non_zero_prefix_; }

  /// Same answers as another tracker on every query (used by the self-checks).
  bool same_state(const M2Tracker& other) const;

 private:
  void count_cell(std::size_t i, tm::SymbolId sym, int sign);

  std::size_t n_ = 0;
  std::vector<tm::SymbolId> tape_;
  Fenwick z_tape_;
  bool has_snap_ = false;
  std::vector<tm::SymbolId> snap_;
  std::vector<std::int64_t> snap_prefix_;
  std::set<std::size_t> mismatches_;
  std::size_t bad_middle_ = 0;
  std::size_t non_zero_prefix_ = 0;
};

Violations m2_check_invariants(const tm::Configuration& c, const M2Tracker& t);
VariantTuple m2_variant(const tm::Configuration& c, const M2Tracker& t);

struct M2LemmaCounts {
  std::uint64_t write_locality = 0;  // steps that wrote X
  std::uint64_t num_zeroes = 0;      // snapshot events
  std::uint64_t only_zeroes = 0;     // (q0, Z) snapshot events
};

class M2Harness : public tm::RunObserver {
 public:
  M2Harness(std::size_t n, HarnessOptions opts = {});

  void on_configuration(const tm::Configuration& c) override;
  void on_step(const tm::StepEvent& e, const tm::Configuration& after) override;

  const M2Ghost& ghost() const { return ghost_; }
  const M2Tracker& tracker() const { return tracker_; }
  const std::optional<VariantTuple>& last_variant() const { return last_variant_; }
  const Violations& violations() const { return violations_; }
  std::uint64_t violation_count() const { return violation_count_; }
  /// Violation counts keyed by invariant family (Violation::expected).
  const std::map<std::string, std::uint64_t>& violations_by_family() const { return by_family_; }
  std::uint64_t configurations() const { return configurations_; }
  std::uint64_t variant_pairs() const { return variant_pairs_; }
  const M2LemmaCounts& lemma_counts() const { return lemmas_; }

 private:
  void record(Violations&& vs);
  void lemma(bool ok, const tm::Configuration& c, const char* clause, const std::string& actual);

  std::size_t n_;
  HarnessOptions opts_;
  M2Ghost ghost_;
  M2Tracker tracker_;
  bool started_ = false;
  std::optional<VariantTuple> last_variant_;
  Violations violations_;
  std::uint64_t violation_count_ = 0;
  std::map<std::string, std::uint64_t> by_family_;
  std::uint64_t configurations_ = 0;
  std::uint64_t variant_pairs_ = 0;
  M2LemmaCounts lemmas_;
};

}  // namespace decider_lab::ghost
