#include "decider_lab/m2_ghost.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "decider_lab/oracles.hpp"

namespace decider_lab::ghost {

using namespace machines::m2;
using tm::Configuration;
using tm::SymbolId;

namespace {

bool counts_as_zero(SymbolId s) { return s == B || s == Z; }

std::int64_t count_zeroes(std::span<const SymbolId> cells, std::size_t i, const char* who) {
  if (i > cells.size()) throw std::out_of_range(std::string(who) + ": index past the end");
  return std::count_if(cells.begin(), cells.begin() + static_cast<std::ptrdiff_t>(i), counts_as_zero);
}

}  // namespace

std::int64_t num_z_tape(std::span<const SymbolId> tape, std::size_t i) { return count_zeroes(tape, i, "num_z_tape"); }
std::int64_t num_z_snap(std::span<const SymbolId> snap, std::size_t i) { return count_zeroes(snap, i, "num_z_snap"); }

bool m2_takes_snapshot(GhostEvent e) { return (e.state == q0 && e.read == Z) || (e.state == q4 && e.read == B); }

M2Ghost m2_ghost_update(GhostEvent event, M2Ghost g, std::span<const SymbolId> post_write_tape) {
  if (m2_takes_snapshot(event)) g.snap.emplace(post_write_tape.begin(), post_write_tape.end());
  return g;
}

void Fenwick::add(std::size_t i, std::int64_t delta) {
  for (++i; i < tree_.size(); i += i & (~i + 1)) tree_[i] += delta;
}

std::int64_t Fenwick::prefix(std::size_t i) const {
  if (i >= tree_.size()) throw std::out_of_range("Fenwick::prefix: index past the end");
  std::int64_t sum = 0;
  for (; i > 0; i -= i & (~i + 1)) sum += tree_[i];
  return sum;
}

M2Tracker::M2Tracker(const Configuration& c, const M2Ghost& g, std::size_t n)
    : n_(n), tape_(c.tape), z_tape_(c.tape.size()) {
  for (std::size_t i = 0; i < tape_.size(); ++i) count_cell(i, tape_[i], +1);
  if (g.snap) {
    on_snapshot(*g.snap);
    // on_snapshot assumes tape == snap; recompute the real mismatches
    mismatches_.clear();
    for (std::size_t i = 0; i < std::min(tape_.size(), snap_.size()); ++i)
      if (tape_[i] != snap_[i]) mismatches_.insert(i);
  }
}

void M2Tracker::count_cell(std::size_t i, SymbolId sym, int sign) {
  if (counts_as_zero(sym)) z_tape_.add(i, sign);
  if (i >= 1 && i < n_ && sym != Z && sym != X) bad_middle_ += sign;
  if (i < n_ && sym != Z) non_zero_prefix_ += sign;
}

void M2Tracker::on_write(std::size_t position, SymbolId before, SymbolId after) {
  if (before == after) return;
  count_cell(position, before, -1);
  count_cell(position, after, +1);
  tape_.at(position) = after;
  if (has_snap_ && position < snap_.size()) {
    if (snap_[position] == after) {
      mismatches_.erase(position);
    } else {
      mismatches_.insert(position);
    }
  }
}

void M2Tracker::on_snapshot(std::span<const SymbolId> snap) {
  has_snap_ = true;
  snap_.assign(snap.begin(), snap.end());
  snap_prefix_.assign(snap_.size() + 1, 0);
  for (std::size_t i = 0; i < snap_.size(); ++i) snap_prefix_[i + 1] = snap_prefix_[i] + (counts_as_zero(snap_[i]) ? 1 : 0);
  mismatches_.clear();
}

bool M2Tracker::snap_agrees(std::size_t lo, std::size_t hi) const {
  auto it = mismatches_.lower_bound(lo);
  return it == mismatches_.end() || *it >= hi;
}

bool M2Tracker::same_state(const M2Tracker& o) const {
  if (n_ != o.n_ || tape_ != o.tape_ || has_snap_ != o.has_snap_ || snap_ != o.snap_ ||
      snap_prefix_ != o.snap_prefix_ || mismatches_ != o.mismatches_ || bad_middle_ != o.bad_middle_ ||
      non_zero_prefix_ != o.non_zero_prefix_ || z_tape_.size() != o.z_tape_.size())
    return false;
  for (std::size_t i = 0; i <= z_tape_.size(); ++i)
    if (z_tape_.prefix(i) != o.z_tape_.prefix(i)) return false;
  return true;
}

namespace {

// Literal scans over the configuration and ghost.
class FullView {
 public:
  FullView(const Configuration& c, const M2Ghost& g, std::size_t n) : c_(c), g_(g), n_(n) {}

  std::size_t n() const { return n_; }
  std::int64_t z_tape(std::size_t i) const { return num_z_tape(c_.tape, i); }
  bool has_snap() const { return g_.snap.has_value(); }
  std::size_t snap_len() const { return g_.snap->size(); }
  std::int64_t z_snap(std::size_t i) const { return num_z_snap(*g_.snap, i); }
  bool snap_agrees(std::size_t lo, std::size_t hi) const {
    for (std::size_t i = lo; i < hi; ++i)
      if ((*g_.snap)[i] != c_.tape[i]) return false;
    return true;
  }
  std::size_t bad_middle() const {
    std::size_t bad = 0;
    for (std::size_t i = 1; i < n_; ++i) bad += c_.tape[i] != Z && c_.tape[i] != X;
    return bad;
  }
  std::size_t non_zero_prefix() const {
    return static_cast<std::size_t>(std::count_if(c_.tape.begin(), c_.tape.begin() + static_cast<std::ptrdiff_t>(n_),
                                                  [](SymbolId s) { return s != Z; }));
  }

 private:
  const Configuration& c_;
  const M2Ghost& g_;
  std::size_t n_;
};

class Sink {
 public:
  Sink(const Configuration& c, Violations& out) : c_(c), out_(out) {}

  template <class Values>
  void require(bool ok, const char* clause, const char* family, Values&& values) {
    if (ok) return;
    out_.push_back({c_.steps, state(), clause, family, values()});
  }
  // Clause local to the current state: the name is prefixed with it.
  template <class Values>
  void local(bool ok, const char* clause, const char* family, Values&& values) {
    if (ok) return;
    out_.push_back({c_.steps, state(), state() + ": " + clause, family, values()});
  }

 private:
  const std::string& state() const { return machines::sipser_m2_machine().state_name(c_.state); }

  const Configuration& c_;
  Violations& out_;
};

bool pow2(std::int64_t v) { return v > 0 && oracles::is_power_of_2(static_cast<std::uint64_t>(v)); }

template <class View>
Violations evaluate(const Configuration& c, const View& v) {
  Violations out;
  Sink sink(c, out);
  const std::size_t n = v.n();
  const std::size_t len = c.tape.size();
  const std::size_t p = c.head;
  const auto q = c.state;

  auto basic = [&] {
    std::ostringstream os;
    os << "p=" << p << " n=" << n << " t.Length=" << len;
    return os.str();
  };

  const bool shape = len == n + 1;
  sink.require(p <= len, "I0: 0 <= p <= t.Length", "I0", basic);
  sink.require(shape, "tape: t.Length == a.Length + 1", "tape bound", basic);
  if (shape) {
    const SymbolId first = (n == 0 || q != q0) ? B : Z;
    sink.require(c.tape[0] == first, "tape: t[0] == (a.Length == 0 || q != q0 ? B : Z)", "tape shape", basic);
    sink.require(v.bad_middle() == 0, "tape: forall 1 <= i < a.Length :: t[i] in {Z, X}", "tape shape", [&] {
      return basic() + " offending=" + std::to_string(v.bad_middle());
    });
    sink.require(c.tape[n] == B, "tape: t[a.Length] == B", "tape shape", basic);
  }

  if (q == q0) {
    sink.local(p == 0, "I0.0: p == 0", "I0", basic);
    if (shape)
      sink.local(v.non_zero_prefix() == 0, "I9: forall i < a.Length :: t[i] == Z", "I9", basic);
    return out;
  }

  const bool needs_snap = q != q_rej || n != 0;
  if (needs_snap) sink.local(v.has_snap(), "snapGlob assigned", "snapshot", basic);
  const bool snap_ok = v.has_snap() && shape;
  const bool i3 = snap_ok && v.snap_len() == len;
  auto counts = [&] {
    std::ostringstream os;
    os << basic();
    if (shape && p <= len) os << " numZTape(p)=" << v.z_tape(p) << " numZTape(n)=" << v.z_tape(n);
    if (i3 && p <= len) os << " numZSnap(p)=" << v.z_snap(p) << " numZSnap(n)=" << v.z_snap(n);
    return os.str();
  };
  auto require_i3 = [&] {
    if (snap_ok) sink.local(i3, "I3: |snapGlob| == t.Length", "I3", counts);
  };
  auto require_i8 = [&] {
    if (i3)
      sink.local(pow2(v.z_snap(n)) == pow2(static_cast<std::int64_t>(n)),
                   "I8: isPowerOf2(numZSnap(snapGlob, a.Length)) <==> isPowerOf2(a.Length)", "I8", counts);
  };
  // Snapshot/tape counts at the head are only meaningful once p is on the tape.
  const bool at = i3 && p <= n;

  switch (q) {
    case q1:
      sink.local(1 <= p && p <= n, "I0.1: 1 <= p <= a.Length", "I0", basic);
      if (i3) sink.local(v.snap_agrees(0, n), "I1: forall i < a.Length :: snapGlob[i] == t[i]", "I1", counts);
      require_i3();
      if (at)
        sink.local(v.z_snap(p) == 1 && v.z_tape(p) == 1,
                     "I5: 1 == numZSnap(snapGlob, p) == numZTape(t, p)", "I5", counts);
      require_i8();
      break;
    case q2:
      sink.local(2 <= p && p <= n, "I0.2: 2 <= p <= a.Length", "I0", basic);
      if (at) sink.local(v.snap_agrees(p, n), "I2: forall p <= i < a.Length :: snapGlob[i] == t[i]", "I2", counts);
      require_i3();
      if (at) sink.local(v.z_snap(p) == 2 * v.z_tape(p), "I6: numZSnap(snapGlob, p) == 2 * numZTape(t, p)", "I6", counts);
      require_i8();
      if (at) sink.local(2 <= v.z_snap(p), "I10.2: 2 <= numZSnap(snapGlob, p)", "I10", counts);
      break;
    case q3:
      sink.local(3 <= p && p <= n, "I0.3: 3 <= p <= a.Length", "I0", basic);
      if (at) sink.local(v.snap_agrees(p, n), "I2: forall p <= i < a.Length :: snapGlob[i] == t[i]", "I2", counts);
      require_i3();
      if (at)
        sink.local(v.z_snap(p) == 2 * v.z_tape(p) - 1, "I7: numZSnap(snapGlob, p) == 2 * numZTape(t, p) - 1",
                     "I7", counts);
      require_i8();
      if (at) sink.local(3 <= v.z_snap(p), "I10.3: 3 <= numZSnap(snapGlob, p)", "I10", counts);
      break;
    case q4:
      sink.local(p < n, "I0.4: 0 <= p < a.Length", "I0", basic);
      require_i3();
      if (i3)
        sink.local(v.z_snap(n) == 2 * v.z_tape(n), "I4: numZSnap(snapGlob, a.Length) == 2 * numZTape(t, a.Length)",
                     "I4", counts);
      require_i8();
      if (i3) sink.local(2 <= v.z_snap(n), "I10.4: 2 <= numZSnap(snapGlob, a.Length)", "I10", counts);
      break;
    case q_acc:
      sink.local(2 <= p && p == n + 1, "I0.a: 2 <= p == a.Length + 1", "I0", basic);
      require_i3();
      if (i3) sink.local(v.z_snap(n) == 1, "numZSnap(snapGlob, a.Length) == 1", "q_acc block", counts);
      require_i8();
      break;
    case q_rej:
      sink.local(1 <= p && p == n + 1, "I0.r: 1 <= p == a.Length + 1", "I0", basic);
      if (n != 0) {
        require_i3();
        if (i3) {
          sink.local(v.z_snap(n) % 2 == 1, "numZSnap(snapGlob, a.Length) % 2 == 1", "q_rej block", counts);
          sink.local(3 <= v.z_snap(n), "I10.r: 3 <= numZSnap(snapGlob, a.Length)", "I10", counts);
        }
        require_i8();
      }
      break;
    default:
      sink.require(false, "state: known M2 state", "state range", basic);
  }
  return out;
}

template <class View>
VariantTuple variant(const Configuration& c, const View& v) {
  const auto q = c.state;
  const bool sweeping = q == q1 || q == q2 || q == q3;
  const bool finishing = q == q4 || q == q_acc || q == q_rej;
  VariantTuple t;
  t.components.push_back(q == q0 ? 1 : 0);
  if (q == q0) {
    t.components.emplace_back(std::nullopt);
  } else if (v.has_snap() && v.snap_len() > v.n()) {
    t.components.emplace_back(v.z_snap(v.n()));
  } else if (v.n() == 0) {
    t.components.emplace_back(0);  // no snapshot is ever taken on the empty input
  } else {
    t.components.emplace_back(std::nullopt);
  }
  t.components.push_back(sweeping ? VariantComponent{1} : finishing ? VariantComponent{0} : std::nullopt);
  const auto len = static_cast<std::int64_t>(c.tape.size());
  const auto p = static_cast<std::int64_t>(c.head);
  t.components.push_back(sweeping ? VariantComponent{len - p} : q == q4 ? VariantComponent{p} : std::nullopt);
  return t;
}

// Adapter so the tracker answers the same questions as FullView.
class TrackerView {
 public:
  explicit TrackerView(const M2Tracker& t) : t_(t) {}
  std::size_t n() const { return t_.n(); }
  std::int64_t z_tape(std::size_t i) const { return t_.z_tape(i); }
  bool has_snap() const { return t_.has_snap(); }
  std::size_t snap_len() const { return t_.snap_len(); }
  std::int64_t z_snap(std::size_t i) const { return t_.z_snap(i); }
  bool snap_agrees(std::size_t lo, std::size_t hi) const { return t_.snap_agrees(lo, hi); }
  std::size_t bad_middle() const { return t_.bad_middle(); }
  std::size_t non_zero_prefix() const { return t_.non_zero_prefix(); }

 private:
  const M2Tracker& t_;
};

}  // namespace

Violations m2_check_invariants(const Configuration& c, const M2Ghost& g, std::size_t n) {
  return evaluate(c, FullView(c, g, n));
}

VariantTuple m2_variant(const Configuration& c, const M2Ghost& g, std::size_t n) {
  return variant(c, FullView(c, g, n));
}

Violations m2_check_invariants(const Configuration& c, const M2Tracker& t) { return evaluate(c, TrackerView(t)); }

VariantTuple m2_variant(const Configuration& c, const M2Tracker& t) { return variant(c, TrackerView(t)); }

M2Harness::M2Harness(std::size_t n, HarnessOptions opts) : n_(n), opts_(opts) {}

void M2Harness::record(Violations&& vs) {
  violation_count_ += vs.size();
  for (auto& v : vs) {
    ++by_family_[v.expected];
    if (violations_.size() >= opts_.max_recorded) continue;
    violations_.push_back(std::move(v));
  }
}

void M2Harness::lemma(bool ok, const Configuration& c, const char* clause, const std::string& actual) {
  if (ok) return;
  record({{c.steps, machines::sipser_m2_machine().state_name(c.state), clause, "lemma", actual}});
}

void M2Harness::on_configuration(const Configuration& c) {
  if (!started_) {
    tracker_ = M2Tracker(c, ghost_, n_);
    started_ = true;
  }
  ++configurations_;

  if (opts_.invariants) {
    auto vs = m2_check_invariants(c, tracker_);
    if (opts_.cross_check) {
      const M2Tracker fresh(c, ghost_, n_);
      if (!fresh.same_state(tracker_))
        vs.push_back({c.steps, machines::sipser_m2_machine().state_name(c.state),
                      "harness: incremental tracker == rebuilt tracker", "harness", ""});
      if (m2_check_invariants(c, ghost_, n_) != vs)
        vs.push_back({c.steps, machines::sipser_m2_machine().state_name(c.state),
                      "harness: incremental view == full scan", "harness", ""});
    }
    record(std::move(vs));
  }

  if (opts_.variant) {
    auto v = m2_variant(c, tracker_);
    if (opts_.cross_check && v != m2_variant(c, ghost_, n_))
      record({{c.steps, machines::sipser_m2_machine().state_name(c.state), "harness: incremental variant == full scan",
               "harness", render(v)}});
    if (last_variant_) {
      ++variant_pairs_;
      const auto verdict = compare_variants(*last_variant_, v);
      if (verdict != VariantVerdict::Decreased)
        record({{c.steps, machines::sipser_m2_machine().state_name(c.state), "variant: lexicographic decrease",
                 "termination variant", render(*last_variant_) + " -> " + render(v) + " (" + to_string(verdict) + ")"}});
    }
    last_variant_ = std::move(v);
  }
}

void M2Harness::on_step(const tm::StepEvent& e, const Configuration& after) {
  const auto written = e.fired.write;
  const bool check_locality = opts_.lemmas && written == X;
  const std::int64_t before_count = check_locality ? tracker_.z_tape(e.position) : 0;

  tracker_.on_write(e.position, e.read, written);

  if (check_locality) {
    ++lemmas_.write_locality;
    const auto after_count = tracker_.z_tape(e.position);
    lemma(before_count == after_count, after, "write-locality: numZTape(t, p) unchanged by writing X at p",
          std::to_string(before_count) + " -> " + std::to_string(after_count));
  }

  const GhostEvent ev{e.from, e.read};
  if (!m2_takes_snapshot(ev)) return;
  ghost_ = m2_ghost_update(ev, std::move(ghost_), after.tape);
  tracker_.on_snapshot(*ghost_.snap);
  if (!opts_.lemmas) return;

  const auto& snap = *ghost_.snap;
  ++lemmas_.num_zeroes;
  std::int64_t zt = 0, zs = 0;
  bool agree = true;
  std::size_t bad = 0;
  for (std::size_t i = 0; agree && i < n_; ++i) {
    zt += counts_as_zero(after.tape[i]);
    zs += counts_as_zero(snap[i]);
    if (zt != zs) agree = false, bad = i + 1;
  }
  lemma(agree, after, "numZeroesLemma: forall i <= a.Length :: numZTape(t, i) == numZSnap(snapGlob, i)",
        "first disagreement at i=" + std::to_string(bad));

  if (e.from == q0) {
    ++lemmas_.only_zeroes;
    const bool form = n_ >= 1 && snap[0] == B &&
                      std::all_of(snap.begin() + 1, snap.begin() + static_cast<std::ptrdiff_t>(n_),
                                  [](SymbolId s) { return s == Z; });
    lemma(form && num_z_snap(snap, n_) == static_cast<std::int64_t>(n_), after,
          "onlyZeroesLemma: numZSnap(snapGlob, a.Length) == a.Length",
          "numZSnap=" + std::to_string(num_z_snap(snap, n_)));
  }
}

}  // namespace decider_lab::ghost
