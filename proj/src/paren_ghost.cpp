#include "decider_lab/paren_ghost.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "decider_lab/oracles.hpp"

namespace decider_lab::ghost {

using namespace machines::paren;
using tm::Configuration;
using tm::SymbolId;
using tm::Word;

std::string render(const ParenGhost& g) {
  std::ostringstream os;
  os << "k=" << g.k << " s=" << g.s << " s'=" << g.s_p << " k'=" << g.k_p << " lp=" << g.lp
     << " rp=" << g.rp;
  return os.str();
}

ParenGhost paren_ghost_update(GhostEvent event, ParenGhost g) {
  switch (event.state) {
    case q0:
      if (event.read == L) {
        ++g.lp, ++g.k_p, ++g.s_p;
      } else if (event.read == R) {
        ++g.rp, ++g.k_p, --g.s_p;
      }
      break;
    case q1:
      if (event.read == B) ++g.s;
      break;
    case q2:
      if (event.read == X) ++g.k;
      break;
    case q4:
      if (event.read == S) --g.s;
      break;
    case q5:
      if (event.read == X) ++g.k;
      break;
    default:
      break;
  }
  return g;
}

namespace {

SymbolId embed(SymbolId input_symbol) { return input_symbol == LP ? L : R; }

void require_shape(const Word& input, std::span<const SymbolId> tape, std::int64_t s, const char* who) {
  const auto n = static_cast<std::int64_t>(input.size());
  if (tape.size() != 2 * input.size() + 1) throw std::logic_error(std::string(who) + ": tape length must be 2n+1");
  if (s < 0 || s > n) throw std::logic_error(std::string(who) + ": s out of range");
}

// Stack region [n, n+s) then blanks.
bool stack_then_blanks(std::span<const SymbolId> tape, std::size_t n, std::size_t s) {
  for (std::size_t i = n; i < n + s; ++i)
    if (tape[i] != S) return false;
  for (std::size_t i = n + s; i < tape.size(); ++i)
    if (tape[i] != B) return false;
  return true;
}

}  // namespace

bool tape_contents_without_x(const Word& input, std::span<const SymbolId> tape, std::int64_t s) {
  require_shape(input, tape, s, "tape_contents_without_x");
  for (std::size_t i = 0; i < input.size(); ++i)
    if (tape[i] != embed(input[i])) return false;
  return stack_then_blanks(tape, input.size(), static_cast<std::size_t>(s));
}

bool tape_contents_with_x_replacing(SymbolId paren, const Word& input, std::span<const SymbolId> tape,
                                    std::int64_t k, std::int64_t s) {
  require_shape(input, tape, s, "tape_contents_with_x_replacing");
  if (k < 0 || k >= static_cast<std::int64_t>(input.size()))
    throw std::logic_error("tape_contents_with_x_replacing: k out of range");
  const auto kk = static_cast<std::size_t>(k);
  if (input[kk] != paren) return false;
  for (std::size_t i = 0; i < input.size(); ++i) {
    if (i == kk) continue;
    if (tape[i] != embed(input[i])) return false;
  }
  if (tape[kk] != X) return false;
  return stack_then_blanks(tape, input.size(), static_cast<std::size_t>(s));
}

int order_q(tm::StateId state) {
  switch (state) {
    case q0: return 0;
    case q1: return 1;
    case q2: return 2;
    case q3: return 1;
    case q4: return 2;
    case q5: return 3;
    case q_acc: return 1;
    case q_rej: return 3;
  }
  throw std::invalid_argument("order_q: not a parentheses state");
}

namespace {

const std::string& state_name(tm::StateId s) { return machines::parentheses_machine().state_name(s); }

// Values shared by every clause of one configuration.
struct Frame {
  const Configuration& c;
  const ParenGhost& g;
  const Word& a;
  std::int64_t n;
  std::int64_t len;  // tape length
  std::int64_t p;

  Frame(const Configuration& c, const ParenGhost& g, const Word& a)
      : c(c), g(g), a(a), n(static_cast<std::int64_t>(a.size())),
        len(static_cast<std::int64_t>(c.tape.size())), p(static_cast<std::int64_t>(c.head)) {}

  bool shape_ok() const { return len == 2 * n + 1; }

  bool without_x(std::int64_t s) const {
    return shape_ok() && s >= 0 && s <= n && tape_contents_without_x(a, c.tape, s);
  }
  bool with_x(SymbolId paren, std::int64_t k, std::int64_t s) const {
    return shape_ok() && s >= 0 && s <= n && k >= 0 && k < n &&
           tape_contents_with_x_replacing(paren, a, c.tape, k, s);
  }
  std::string values() const {
    std::ostringstream os;
    os << render(g) << " p=" << p << " n=" << n << " tape=" << machines::parentheses_machine().render_tape(c.tape);
    return os.str();
  }
};

class Sink {
 public:
  Sink(const Frame& f, Violations& out) : f_(f), out_(out) {}

  void require(bool ok, const char* clause, const char* family) {
    if (ok) return;
    out_.push_back({f_.c.steps, state_name(f_.c.state), clause, family, f_.values()});
  }
  // Prefixes the clause with the current state's name.
  void local(bool ok, const char* clause, const char* family) {
    if (ok) return;
    out_.push_back({f_.c.steps, state_name(f_.c.state), state_name(f_.c.state) + ": " + clause, family, f_.values()});
  }

 private:
  const Frame& f_;
  Violations& out_;
};

bool via_q0(const Frame& f) {
  const auto& g = f.g;
  return 0 < g.s && g.k == f.n && f.without_x(g.s) && f.p == f.n + 1 && g.s_p == g.s && g.k_p == g.k;
}

bool via_q4(const Frame& f) {
  const auto& g = f.g;
  return 0 == g.s && 0 <= g.k && g.k < f.n && f.with_x(RP, g.k, 0) && f.p == f.n &&
         g.s_p == g.s - 1 && g.k_p == g.k + 1;
}

// One block per working state: ranges, tape shape and the (s, k) / (s', k') offsets.
// The head window differs too much between states to tabulate and stays inline.
struct LocalBlock {
  tm::StateId state;
  std::int64_t s_lo, s_hi_excl;  // s in [s_lo, n + s_hi_excl)
  std::int64_t k_lo, k_hi_excl;  // k in [k_lo, n + k_hi_excl)
  SymbolId paren;                // LP or RP
  std::int64_t ds, dk;           // s' == s + ds, k' == k + dk
  const char* family;
  const char* s_clause;
  const char* k_clause;
  const char* tape_clause;
  const char* offset_clause;
};

constexpr LocalBlock kBlocks[] = {
    {q1, 0, 0, 0, 0, LP, +1, +1, "q1 block", "0 <= s < a.Length", "0 <= k < a.Length",
     "tapeContentsWithXReplacing(LP, a, t, k, s)", "s' == s + 1 && k' == k + 1"},
    {q2, 1, 1, 0, 0, LP, 0, +1, "q2 block", "0 < s <= a.Length", "0 <= k < a.Length",
     "tapeContentsWithXReplacing(LP, a, t, k, s)", "s' == s && k' == k + 1"},
    {q3, 0, 0, 0, 0, RP, -1, +1, "q3 block", "0 <= s < a.Length", "0 <= k < a.Length",
     "tapeContentsWithXReplacing(RP, a, t, k, s)", "s' == s - 1 && k' == k + 1"},
    {q4, 0, 0, 0, 0, RP, -1, +1, "q4 block", "0 <= s < a.Length", "0 <= k < a.Length",
     "tapeContentsWithXReplacing(RP, a, t, k, s)", "s' == s - 1 && k' == k + 1"},
    {q5, 0, 0, 1, 0, RP, 0, +1, "q5 block", "0 <= s < a.Length", "0 < k < a.Length",
     "tapeContentsWithXReplacing(RP, a, t, k, s)", "s' == s && k' == k + 1"},
};

}  // namespace

Violations paren_check_invariants(const Configuration& c, const ParenGhost& g, const Word& a) {
  Violations out;
  const Frame f(c, g, a);
  Sink sink(f, out);
  const auto n = f.n;
  const auto p = f.p;

  sink.require(f.shape_ok(), "tape: t.Length == 2 * a.Length + 1", "tape bound");
  sink.require(0 <= p && p <= f.len, "global: 0 <= p <= t.Length", "head range");
  sink.require(0 <= g.s && g.s <= n, "global: 0 <= s <= a.Length", "ghost ranges");
  sink.require(0 <= g.k && g.k <= n, "global: 0 <= k <= a.Length", "ghost ranges");
  sink.require(g.s_p == g.lp - g.rp, "global: s' == lp - rp", "counting ghosts");
  sink.require(g.k_p == g.lp + g.rp, "global: k' == lp + rp", "counting ghosts");
  sink.require(-1 <= g.s_p && g.s_p <= g.k_p, "global: -1 <= s' <= k'", "counting ghosts");
  sink.require(0 <= g.k_p && g.k_p <= n, "global: 0 <= k' <= a.Length", "counting ghosts");

  const bool kp_ok = 0 <= g.k_p && g.k_p <= n;
  const bool k_ok = 0 <= g.k && g.k <= n;
  sink.require(kp_ok && g.s_p == oracles::left_minus_right(a, static_cast<std::size_t>(g.k_p)),
               "left-minus-right: s' == leftMinusRight(a, k')", "left-minus-right invariant");
  sink.require(k_ok && oracles::never_more_right_than_left(a, static_cast<std::size_t>(g.k)),
               "never-more: neverMoreRightThanLeft(a, k)", "never-more invariant");
  sink.require(k_ok && oracles::left_minus_right(a, static_cast<std::size_t>(g.k)) >= 0,
               "explanational: 0 <= leftMinusRight(a, k)", "never-more invariant");

  switch (c.state) {
    case q0: {
      sink.local(0 <= g.s && g.s <= n, "0 <= s <= a.Length", "q0 block");
      sink.local(0 <= g.k && g.k <= n, "0 <= k <= a.Length", "q0 block");
      sink.local(f.without_x(g.s), "tapeContentsWithoutX(a, t, s)", "q0 block");
      sink.local(g.k == p, "k == p", "q0 block");
      sink.local(g.s_p == g.s && g.k_p == g.k, "s' == s && k' == k", "q0 block");
      const auto stacks = std::count(c.tape.begin(), c.tape.end(), S);
      sink.local(g.s == stacks, "s == #$ on tape", "ghost/real agreement");
      break;
    }
    case q1:
    case q2:
    case q3:
    case q4:
    case q5: {
      const auto& b = *std::find_if(std::begin(kBlocks), std::end(kBlocks),
                                    [&](const LocalBlock& blk) { return blk.state == c.state; });
      const char* fam = b.family;
      sink.local(b.s_lo <= g.s && g.s < n + b.s_hi_excl, b.s_clause, fam);
      sink.local(b.k_lo <= g.k && g.k < n + b.k_hi_excl, b.k_clause, fam);
      sink.local(f.with_x(b.paren, g.k, g.s), b.tape_clause, fam);
      switch (c.state) {
        case q1:
        case q3:
          sink.local(g.k < p && p <= n + g.s, "k < p <= a.Length + s", fam);
          break;
        case q2:
          sink.local(g.k <= p && p < n + g.s - 1, "k <= p < a.Length + s - 1", fam);
          break;
        case q4:
          sink.local(p == n + g.s - 1, "p == a.Length + s - 1", fam);
          break;
        case q5:
          sink.local(g.k <= p && p < n + g.s, "k <= p < a.Length + s", fam);
          break;
      }
      sink.local(g.s_p == g.s + b.ds && g.k_p == g.k + b.dk, b.offset_clause, fam);
      break;
    }
    case q_acc:
      sink.local(0 == g.s, "0 == s", "q_acc block");
      sink.local(g.k == n, "k == a.Length", "q_acc block");
      sink.local(f.without_x(0), "tapeContentsWithoutX(a, t, 0)", "q_acc block");
      sink.local(p == n + 1, "p == a.Length + 1", "q_acc block");
      sink.local(g.s_p == g.s && g.k_p == g.k, "s' == s && k' == k", "q_acc block");
      break;
    case q_rej:
      sink.local(via_q0(f) || via_q4(f), "via q0 || via q4", "q_rej block");
      break;
    default:
      sink.require(false, "state: known parentheses state", "state range");
  }
  return out;
}

std::optional<RejectRoute> paren_reject_route(const Configuration& c, const ParenGhost& g, const Word& input) {
  if (c.state != q_rej) return std::nullopt;
  const Frame f(c, g, input);
  if (via_q0(f)) return RejectRoute::ViaQ0;
  if (via_q4(f)) return RejectRoute::ViaQ4;
  return std::nullopt;
}

VariantTuple paren_variant(const Configuration& c, const ParenGhost& g, const Word& input) {
  const auto n = static_cast<std::int64_t>(input.size());
  const auto len = static_cast<std::int64_t>(c.tape.size());
  const auto p = static_cast<std::int64_t>(c.head);
  const bool rightward = c.state == q1 || c.state == q3;
  return VariantTuple{{n - g.k, 3 - order_q(c.state), rightward ? len - p : p}};
}

Violations paren_check_final(const Configuration& c, const ParenGhost& g, const Word& a) {
  if (c.state != q_acc && c.state != q_rej) throw std::logic_error("paren_check_final: configuration not halted");
  Violations out;
  const Frame f(c, g, a);
  Sink sink(f, out);
  const auto n = f.n;
  if (c.state == q_acc) {
    sink.require(0 == g.s, "final accept: 0 == s", "accept postcondition");
    sink.require(g.k == n, "final accept: k == a.Length", "accept postcondition");
    sink.require(f.without_x(0), "final accept: tapeContentsWithoutX(a, t, 0)", "accept postcondition");
    sink.require(oracles::left_minus_right(a, a.size()) == 0, "final accept: 0 == leftMinusRight(a, a.Length)",
                 "accept postcondition");
    sink.require(n % 2 == 0, "final accept: a.Length % 2 == 0", "accept postcondition");
    return out;
  }
  const bool by_q0 = 0 < g.s && g.s <= n && 0 < g.k && g.k == n && f.without_x(g.s) &&
                     0 < oracles::left_minus_right(a, a.size());
  const bool by_q4 = 0 == g.s && g.s < n && 0 <= g.k && g.k < n && f.with_x(RP, g.k, 0) &&
                     -1 == oracles::left_minus_right(a, static_cast<std::size_t>(g.k + 1));
  sink.require(by_q0 || by_q4, "final reject: via q0 || via q4", "reject postcondition");
  return out;
}

ParenHarness::ParenHarness(const Word& input, HarnessOptions opts) : input_(input), opts_(opts) {}

void ParenHarness::record(Violations&& vs) {
  violation_count_ += vs.size();
  for (auto& v : vs) {
    ++by_family_[v.expected];
    if (violations_.size() >= opts_.max_recorded) continue;
    violations_.push_back(std::move(v));
  }
}

void ParenHarness::on_configuration(const Configuration& c) {
  ++configurations_;
  if (opts_.invariants) record(paren_check_invariants(c, ghost_, input_));

  if (opts_.variant) {
    auto v = paren_variant(c, ghost_, input_);
    if (last_variant_) {
      ++variant_pairs_;
      const auto verdict = compare_variants(*last_variant_, v);
      if (verdict != VariantVerdict::Decreased) {
        record({{c.steps, state_name(c.state), "variant: lexicographic decrease", "termination variant",
                 render(*last_variant_) + " -> " + render(v) + " (" + to_string(verdict) + ")"}});
      }
    }
    last_variant_ = std::move(v);
  }

  const auto n = static_cast<std::int64_t>(input_.size());
  if (ghost_.k >= 0 && ghost_.k <= n) {
    const auto k = static_cast<std::size_t>(ghost_.k);
    accumulated_.push_back({ghost_.k, oracles::left_minus_right(input_, k) >= 0,
                            oracles::never_more_right_than_left(input_, k)});
  }

  if (c.state == q_rej) reject_route_ = paren_reject_route(c, ghost_, input_);
  if (opts_.final_checks && (c.state == q_acc || c.state == q_rej)) record(paren_check_final(c, ghost_, input_));
}

void ParenHarness::on_step(const tm::StepEvent& e, const Configuration&) {
  ghost_ = paren_ghost_update({e.from, e.read}, ghost_);
  if (e.fired.write != e.read)
    max_changed_index_ = std::max(max_changed_index_.value_or(0), e.position);
}

}  // namespace decider_lab::ghost
