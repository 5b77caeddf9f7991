#include "decider_lab/verify.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "decider_lab/accumulated.hpp"
#include "decider_lab/m2_ghost.hpp"
#include "decider_lab/machines.hpp"
#include "decider_lab/oracles.hpp"
#include "decider_lab/paren_ghost.hpp"

namespace decider_lab::verify {

using ghost::Violation;
using ghost::Violations;
using tm::Configuration;

const tm::MachineDef& machine_for(MachineKind k) {
  return k == MachineKind::Paren ? machines::parentheses_machine() : machines::sipser_m2_machine();
}

Checks Checks::parse(std::string_view list) {
  Checks c = none();
  std::size_t start = 0;
  while (start <= list.size()) {
    const auto comma = std::min(list.find(',', start), list.size());
    const auto name = list.substr(start, comma - start);
    if (name == "invariants") c.invariants = true;
    else if (name == "variant") c.variant = true;
    else if (name == "bounds") c.bounds = true;
    else if (name == "final") c.final_checks = true;
    else if (name == "oracle") c.oracle = true;
    else if (name == "dead") c.dead = true;
    else if (name == "all") c = all();
    else throw std::invalid_argument("unknown check '" + std::string(name) + "'");
    start = comma + 1;
  }
  return c;
}

Mutation Mutation::parse(const tm::MachineDef& m, std::string_view text) {
  auto fail = [&](const std::string& why) {
    return std::invalid_argument("bad mutation '" + std::string(text) + "': " + why);
  };
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw fail("expected STATE,SYMBOL:NEXT,WRITE,MOVE or STATE,SYMBOL:dead");
  const auto lhs = text.substr(0, colon);
  const auto rhs = text.substr(colon + 1);

  auto state = [&](std::string_view name) {
    auto s = m.state_by_name(name);
    if (!s) throw fail("unknown state '" + std::string(name) + "'");
    return *s;
  };
  auto symbol = [&](std::string_view g) {
    if (g.size() != 1) throw fail("symbols are single glyphs");
    auto s = m.symbol_by_glyph(g[0]);
    if (!s) throw fail("unknown symbol '" + std::string(g) + "'");
    return *s;
  };
  // The glyph itself may be ',' only in principle; none of ours is.
  const auto comma = lhs.find(',');
  if (comma == std::string_view::npos) throw fail("missing ',' between state and symbol");
  Mutation mu;
  mu.state = state(lhs.substr(0, comma));
  mu.symbol = symbol(lhs.substr(comma + 1));
  if (m.is_halting(mu.state)) throw fail("halting states have no transitions");
  if (rhs == "dead") return mu;

  const auto c1 = rhs.find(',');
  const auto c2 = c1 == std::string_view::npos ? c1 : rhs.find(',', c1 + 1);
  if (c2 == std::string_view::npos) throw fail("expected NEXT,WRITE,MOVE");
  tm::Transition t;
  t.next = state(rhs.substr(0, c1));
  t.write = symbol(rhs.substr(c1 + 1, c2 - c1 - 1));
  const auto mv = rhs.substr(c2 + 1);
  if (mv == "L") t.move = tm::Move::Left;
  else if (mv == "R") t.move = tm::Move::Right;
  else throw fail("move must be L or R");
  mu.replacement = t;
  return mu;
}

std::string Mutation::str(const tm::MachineDef& m) const {
  std::string out = m.state_name(state) + "," + m.glyph(symbol) + ":";
  if (!replacement) return out + "dead";
  return out + m.state_name(replacement->next) + "," + m.glyph(replacement->write) + "," + tm::to_char(replacement->move);
}

std::vector<tm::Word> paren_words(std::size_t max_len) {
  if (max_len > 30) throw std::invalid_argument("paren_words: length bound too large to enumerate");
  std::vector<tm::Word> out;
  for (std::size_t len = 0; len <= max_len; ++len) {
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << len); ++bits) {
      tm::Word w(len);
      // most significant bit first, so LP (0) < RP (1) gives lexicographic order
      for (std::size_t i = 0; i < len; ++i) w[i] = static_cast<tm::SymbolId>((bits >> (len - 1 - i)) & 1);
      out.push_back(std::move(w));
    }
  }
  return out;
}

int VerifySummary::exit_code() const {
  if (violations > 0) return 4;
  if (engine_errors > 0) return 3;
  return 0;
}

namespace {

// Per-run result, merged in enumeration order.
struct Outcome {
  std::string input;
  bool accepted = false;
  bool halted = false;
  std::uint64_t steps = 0;
  std::uint64_t configurations = 0;
  std::uint64_t variant_pairs = 0;
  std::uint64_t violations = 0;
  Violations recorded;
  bool engine_error = false;
  bool dead = false, overrun = false, fuel = false;
  std::uint64_t oracle_mismatches = 0;
  std::optional<ghost::RejectRoute> route;
  bool accumulated = false;
  ghost::M2LemmaCounts lemmas;

  std::map<std::string, std::uint64_t> by_family;

  void add(Violation v, std::size_t keep) {
    ++violations;
    ++by_family[v.expected];
    if (recorded.size() < keep) recorded.push_back(std::move(v));
  }
};

class BoundsObserver : public tm::RunObserver {
 public:
  BoundsObserver(const tm::MachineDef& m, std::size_t n) : m_(m), expected_len_(m.tape_size(n)) {}
  void on_configuration(const Configuration& c) override {
    auto flag = [&](const char* clause, const std::string& actual) {
      found.push_back({c.steps, m_.state_name(c.state), clause, "tape bounds", actual});
    };
    if (c.tape.size() != expected_len_)
      flag("bounds: t.Length == tape_size(n)", std::to_string(c.tape.size()) + " != " + std::to_string(expected_len_));
    if (c.head > c.tape.size()) flag("bounds: p <= t.Length", "p=" + std::to_string(c.head));
    if (c.head == c.tape.size() && !m_.is_halting(c.state))
      flag("bounds: p == t.Length only when halted", "p=" + std::to_string(c.head));
  }
  Violations found;

 private:
  const tm::MachineDef& m_;
  std::size_t expected_len_;
};

// Step and state of the most recent configuration, for error reports.
class LastSeen : public tm::RunObserver {
 public:
  void on_configuration(const Configuration& c) override {
    steps = c.steps;
    state = c.state;
  }
  std::uint64_t steps = 0;
  tm::StateId state = 0;
};

Violation engine_violation(const tm::MachineDef& m, const LastSeen& last, const char* clause, const char* family,
                           const std::string& what) {
  return {last.steps, m.state_name(last.state), clause, family, what};
}

template <class Harness>
void run_one(const VerifyOptions& opts, const tm::MachineDef& machine, const tm::Word& input, Harness& harness,
             Outcome& out) {
  const auto& reference = machine_for(opts.machine);
  const auto& checks = opts.checks;
  BoundsObserver bounds(reference, input.size());
  LastSeen last;
  tm::ObserverList observers;
  observers.add(harness);
  if (checks.bounds) observers.add(bounds);
  observers.add(last);

  const auto fuel = opts.fuel.value_or(tm::default_fuel(input.size()));
  std::optional<tm::RunResult> result;
  try {
    result = tm::run(machine, input, fuel, &observers);
  } catch (const tm::DeadTransitionError& e) {
    out.dead = true;
    if (checks.dead) out.add(engine_violation(reference, last, "dead: transition fired", "dead transition", e.what()), opts.max_findings);
    else out.engine_error = true;
  } catch (const tm::TapeOverrun& e) {
    out.overrun = true;
    if (checks.bounds) out.add(engine_violation(reference, last, "bounds: no read past the tape", "tape bounds", e.what()), opts.max_findings);
    else out.engine_error = true;
  } catch (const tm::FuelExhausted& e) {
    out.fuel = true;
    if (checks.variant) out.add(engine_violation(reference, last, "variant: run halts within fuel", "termination variant", e.what()), opts.max_findings);
    else out.engine_error = true;
  }

  for (auto& v : bounds.found) out.add(std::move(v), opts.max_findings);
  out.configurations = harness.configurations();
  out.variant_pairs = harness.variant_pairs();
  out.violations += harness.violation_count();
  for (const auto& [family, count] : harness.violations_by_family()) out.by_family[family] += count;
  for (const auto& v : harness.violations())
    if (out.recorded.size() < opts.max_findings) out.recorded.push_back(v);

  if (!result) return;
  out.halted = true;
  out.accepted = result->decision == tm::Decision::Accept;
  out.steps = result->steps;

  if (checks.bounds) {
    const auto n = input.size();
    const auto head = result->final_config.head;
    const bool paren_reject = opts.machine == MachineKind::Paren && !out.accepted;
    if (!(head == n + 1 || (paren_reject && head == n)))
      out.add({result->steps, reference.state_name(result->final_config.state), "bounds: final head", "tape bounds",
               "p=" + std::to_string(head) + " n=" + std::to_string(n)},
              opts.max_findings);
  }
}

Outcome verify_paren(const VerifyOptions& opts, const tm::MachineDef& machine, const tm::Word& word) {
  Outcome out;
  const auto& m = machines::parentheses_machine();
  out.input = "\"" + m.render_word(word) + "\"";
  ghost::HarnessOptions h;
  h.invariants = opts.checks.invariants;
  h.variant = opts.checks.variant;
  h.final_checks = opts.checks.final_checks;
  h.max_recorded = opts.max_findings;
  ghost::ParenHarness harness(word, h);
  run_one(opts, machine, word, harness, out);
  out.route = harness.reject_route();

  if (opts.checks.invariants) {
    out.accumulated = true;
    if (!ghost::accumulated_invariant_check(harness.accumulated_trace()))
      out.add({0, "", "accumulated: forall j <= k :: 0 <= leftMinusRight(a, j)", "accumulated invariant", out.input},
              opts.max_findings);
  }
  if (opts.checks.oracle && out.halted) {
    const auto n = word.size();
    const bool oracle = oracles::oracle_parentheses(word) == tm::Decision::Accept;
    const bool c1c2 = oracles::never_more_right_than_left(word, n) && oracles::left_minus_right(word, n) == 0;
    const bool grammar = oracles::cfg_member(word);
    auto mismatch = [&](bool ok, const char* clause, bool other) {
      if (ok) return;
      ++out.oracle_mismatches;
      out.add({out.steps, "", clause, "oracle", std::string("machine=") + (out.accepted ? "accept" : "reject") +
                                                   " other=" + (other ? "accept" : "reject")},
              opts.max_findings);
    };
    mismatch(out.accepted == oracle, "oracle: machine == OracleParentheses", oracle);
    mismatch(out.accepted == c1c2, "oracle: machine == (C1 && C2)", c1c2);
    mismatch(out.accepted == grammar, "oracle: machine == grammar membership", grammar);
  }
  return out;
}

Outcome verify_m2(const VerifyOptions& opts, const tm::MachineDef& machine, std::uint64_t n) {
  Outcome out;
  out.input = "n=" + std::to_string(n);
  ghost::HarnessOptions h;
  h.invariants = opts.checks.invariants;
  h.variant = opts.checks.variant;
  h.lemmas = opts.lemmas;
  h.max_recorded = opts.max_findings;
  ghost::M2Harness harness(n, h);
  run_one(opts, machine, machines::zeros(n), harness, out);
  out.lemmas = harness.lemma_counts();
  if (opts.checks.oracle && out.halted) {
    const bool oracle = oracles::oracle_sipser_m2(n);
    const bool pow2 = oracles::is_power_of_2(n);
    if (out.accepted != oracle || out.accepted != pow2) {
      ++out.oracle_mismatches;
      out.add({out.steps, "", "oracle: machine == OracleSipserM2 == isPowerOf2(n)", "oracle",
               std::string("machine=") + (out.accepted ? "accept" : "reject") + " oracle=" + (oracle ? "accept" : "reject") +
                   " isPowerOf2=" + (pow2 ? "true" : "false")},
              opts.max_findings);
    }
  }
  return out;
}

}  // namespace

VerifySummary run_verify(const VerifyOptions& opts) {
  const auto& reference = machine_for(opts.machine);
  std::optional<tm::MachineDef> mutated;
  if (opts.mutation)
    mutated.emplace(reference.with_transition(opts.mutation->state, opts.mutation->symbol, opts.mutation->replacement));
  const tm::MachineDef& machine = mutated ? *mutated : reference;

  std::vector<tm::Word> words;
  std::vector<std::uint64_t> lengths;
  if (opts.machine == MachineKind::Paren) {
    words = paren_words(opts.max_len);
  } else {
    for (std::uint64_t n = 0; n <= opts.max_len; ++n) lengths.push_back(n);
    for (auto s : opts.samples)
      if (s > opts.max_len && std::find(lengths.begin(), lengths.end(), s) == lengths.end()) lengths.push_back(s);
  }
  const std::size_t total = opts.machine == MachineKind::Paren ? words.size() : lengths.size();

  std::vector<Outcome> outcomes(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      outcomes[i] = opts.machine == MachineKind::Paren ? verify_paren(opts, machine, words[i])
                                                       : verify_m2(opts, machine, lengths[i]);
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(opts.jobs, static_cast<unsigned>(std::max<std::size_t>(total, 1))));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  VerifySummary s;
  for (auto& o : outcomes) {
    ++s.runs;
    if (o.halted) (o.accepted ? s.accepted : s.rejected)++;
    s.configurations += o.configurations;
    s.variant_pairs += o.variant_pairs;
    s.total_steps += o.steps;
    s.max_steps = std::max(s.max_steps, o.steps);
    s.violations += o.violations;
    for (const auto& [family, count] : o.by_family) s.by_family[family] += count;
    s.engine_errors += o.engine_error;
    s.dead_transitions += o.dead;
    s.tape_overruns += o.overrun;
    s.fuel_exhausted += o.fuel;
    s.oracle_mismatches += o.oracle_mismatches;
    if (o.route == ghost::RejectRoute::ViaQ0) ++s.reject_via_q0;
    if (o.route == ghost::RejectRoute::ViaQ4) ++s.reject_via_q4;
    s.accumulated_traces += o.accumulated;
    s.write_locality += o.lemmas.write_locality;
    s.num_zeroes += o.lemmas.num_zeroes;
    s.only_zeroes += o.lemmas.only_zeroes;
    s.runs_write_locality += o.lemmas.write_locality > 0;
    s.runs_num_zeroes += o.lemmas.num_zeroes > 0;
    s.runs_only_zeroes += o.lemmas.only_zeroes > 0;
    for (auto& v : o.recorded) {
      if (s.findings.size() >= opts.max_findings) break;
      s.findings.push_back({o.input, std::move(v)});
    }
  }
  return s;
}

std::string render_summary(const VerifyOptions& opts, const VerifySummary& s) {
  std::ostringstream os;
  os << "machine: " << machine_for(opts.machine).name();
  if (opts.mutation) os << " with " << opts.mutation->str(machine_for(opts.machine));
  os << "\n";
  os << "runs: " << s.runs << " (accept " << s.accepted << ", reject " << s.rejected << ")\n";
  os << "configurations: " << s.configurations << ", variant pairs: " << s.variant_pairs << ", max steps: " << s.max_steps
     << "\n";
  if (opts.machine == MachineKind::Paren) {
    os << "reject routes: via q0 " << s.reject_via_q0 << ", via q4 " << s.reject_via_q4 << "\n";
    os << "accumulated traces checked: " << s.accumulated_traces << "\n";
  } else {
    os << "lemma assertions: write-locality " << s.write_locality << ", numZeroes " << s.num_zeroes << ", onlyZeroes "
       << s.only_zeroes << "\n";
  }
  os << "dead transitions: " << s.dead_transitions << ", tape overruns: " << s.tape_overruns
     << ", fuel exhausted: " << s.fuel_exhausted << ", oracle mismatches: " << s.oracle_mismatches << "\n";
  for (const auto& [family, count] : s.by_family) os << "  " << family << ": " << count << "\n";
  os << "violations: " << s.violations << ", unchecked engine errors: " << s.engine_errors << "\n";
  os << (s.ok() ? "result: ok" : "result: FAILED") << "\n";
  return os.str();
}

}  // namespace decider_lab::verify
