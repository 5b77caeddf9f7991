// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>

#include "decider_lab/m2_combinators.hpp"
#include "decider_lab/combinator.hpp"
#include "decider_lab/commands.hpp"
#include "decider_lab/machines.hpp"
#include "decider_lab/oracles.hpp"
#include "decider_lab/paren_ghost.hpp"
#include "decider_lab/verify.hpp"

#ifndef DECIDER_LAB_GOLDEN_DIR
#error "DECIDER_LAB_GOLDEN_DIR must point at tests/golden"
#endif

using namespace decider_lab;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
  if (!ok) ++failures;
  std::printf("%s  %2d  %s: %s\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
  std::fflush(stdout);
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  return buf;
}

std::uint64_t family(const verify::VerifySummary& s, const std::string& name) {
  auto it = s.by_family.find(name);
  return it == s.by_family.end() ? 0 : it->second;
}

// Families that belong to criteria 4-7 and the oracle; everything else is an invariant.
const std::set<std::string> kNonInvariantFamilies = {
    "termination variant", "tape bounds", "dead transition", "oracle", "accept postcondition", "reject postcondition",
};

std::uint64_t invariant_violations(const verify::VerifySummary& s) {
  std::uint64_t n = 0;
  for (const auto& [fam, count] : s.by_family)
    if (!kNonInvariantFamilies.count(fam)) n += count;
  return n;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string trace_text(const std::string& word, const std::function<bool(const std::string&, std::size_t)>& keep) {
  cli::TraceArgs a;
  a.run.machine = verify::MachineKind::Paren;
  a.run.input = word;
  std::ostringstream out, err;
  cli::cmd_trace(a, out, err);
  std::istringstream in(out.str());
  std::string kept;
  std::size_t i = 0;
  for (std::string line; std::getline(in, line); ++i)
    if (keep(line, i)) kept += line + "\n";
  return kept;
}

}  // namespace

int main() {
  const unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  const auto& paren = machines::parentheses_machine();
  const auto& m2 = machines::sipser_m2_machine();

  // 1. decisions on every parentheses word up to length 14, plus the final-tape data for 7
  std::uint64_t words = 0, mismatches = 0, accepts = 0;
  std::uint64_t final_failures = 0, even_accepts = 0, via_q4 = 0, via_q4_minus_one = 0, via_q0 = 0;
  auto t1 = Clock::now();
  for (const auto& w : verify::paren_words(14)) {
    ghost::HarnessOptions only_final;
    only_final.invariants = false;
    only_final.variant = false;
    ghost::ParenHarness h(w, only_final);
    const auto r = tm::run(paren, w, tm::default_fuel(w.size()), &h);
    const bool machine = r.decision == tm::Decision::Accept;
    const bool oracle = oracles::oracle_parentheses(w) == tm::Decision::Accept;
    const bool c1c2 = oracles::never_more_right_than_left(w, w.size()) && oracles::left_minus_right(w, w.size()) == 0;
    const bool grammar = oracles::cfg_member(w);
    ++words;
    accepts += machine;
    if (!(machine == oracle && oracle == c1c2 && c1c2 == grammar)) ++mismatches;

    if (!ghost::paren_check_final(r.final_config, h.ghost(), w).empty() || h.violation_count()) ++final_failures;
    if (machine) {
      if (w.size() % 2 == 0) ++even_accepts;
    } else if (h.reject_route() == ghost::RejectRoute::ViaQ4) {
      ++via_q4;
      const auto k = static_cast<std::size_t>(h.ghost().k);
      if (k < w.size() && oracles::left_minus_right(w, k + 1) == -1) ++via_q4_minus_one;
    } else if (h.reject_route() == ghost::RejectRoute::ViaQ0) {
      ++via_q0;
    }
  }
  const double d1 = seconds_since(t1);
  report(1, words == 32767 && mismatches == 0 && d1 < 30.0, "parentheses decisions, |w| <= 14",
         std::to_string(words) + " words, " + std::to_string(accepts) + " accepted, " + std::to_string(mismatches) +
             " disagreements among machine / OracleParentheses / C1&C2 / grammar, " + fmt_seconds(d1));

  // 2. M2 decisions
  std::vector<std::uint64_t> lengths;
  for (std::uint64_t n = 0; n <= 2048; ++n) lengths.push_back(n);
  for (std::uint64_t n : {4096u, 16384u, 65536u}) lengths.push_back(n);
  std::uint64_t m2_mismatch = 0, m2_accepts = 0;
  auto t2 = Clock::now();
  for (auto n : lengths) {
    const auto r = tm::run(m2, machines::zeros(n), tm::default_fuel(n));
    const bool machine = r.decision == tm::Decision::Accept;
    m2_accepts += machine;
    if (machine != oracles::is_power_of_2(n) || machine != oracles::oracle_sipser_m2(n)) ++m2_mismatch;
  }
  const double d2 = seconds_since(t2);
  report(2, m2_mismatch == 0 && d2 < 60.0, "M2 decisions, n <= 2048 and n in {4096, 16384, 65536}",
         std::to_string(lengths.size()) + " inputs, " + std::to_string(m2_accepts) + " accepted, " +
             std::to_string(m2_mismatch) + " disagreements with isPowerOf2, " + fmt_seconds(d2));

  // The full harness over the same inputs feeds criteria 3-7 and 11.
  verify::VerifyOptions po;
  po.machine = verify::MachineKind::Paren;
  po.max_len = 14;
  po.jobs = jobs;
  auto tp = Clock::now();
  const auto ps = verify::run_verify(po);
  const double dp = seconds_since(tp);

  verify::VerifyOptions mo;
  mo.machine = verify::MachineKind::M2;
  mo.max_len = 2048;
  mo.samples = {4096, 16384, 65536};
  mo.jobs = jobs;
  auto tm2 = Clock::now();
  const auto ms = verify::run_verify(mo);
  const double dm = seconds_since(tm2);

  // 3. invariants
  {
    const auto pi = invariant_violations(ps), mi = invariant_violations(ms);
    report(3, ps.runs == 32767 && ms.runs == lengths.size() && pi == 0 && mi == 0 && ps.engine_errors == 0 &&
                  ms.engine_errors == 0,
           "invariant catalogues on every configuration",
           "paren " + std::to_string(ps.configurations) + " configurations, " + std::to_string(pi) +
               " violations (" + fmt_seconds(dp) + "); M2 " + std::to_string(ms.configurations) + " configurations, " +
               std::to_string(mi) + " violations (" + fmt_seconds(dm) + ")");
  }

  // 4. variants
  {
    const bool all_pairs = ps.variant_pairs == ps.configurations - ps.runs && ms.variant_pairs == ms.configurations - ms.runs;
    const auto bad = family(ps, "termination variant") + family(ms, "termination variant");
    report(4, all_pairs && bad == 0 && ps.fuel_exhausted == 0 && ms.fuel_exhausted == 0,
           "termination variants decrease on every step",
           std::to_string(ps.variant_pairs + ms.variant_pairs) + " consecutive pairs, " + std::to_string(bad) +
               " non-decreasing, " + std::to_string(ps.fuel_exhausted + ms.fuel_exhausted) + " fuel exhaustions");
  }

  // 5. tape bounds, and "(" * n writing $ at square 2n-1
  {
    bool tight = true;
    for (std::size_t n = 1; n <= 14; ++n) {
      ghost::ParenHarness h(tm::Word(n, machines::paren::LP));
      const auto r = tm::run(paren, tm::Word(n, machines::paren::LP), tm::default_fuel(n), &h);
      tight = tight && h.max_changed_index() == 2 * n - 1 && r.final_config.tape[2 * n - 1] == machines::paren::S &&
              r.max_head <= 2 * n;
    }
    const auto bad = family(ps, "tape bounds") + family(ms, "tape bounds") + family(ps, "tape bound") +
                     family(ms, "tape bound") + family(ps, "head range") + ps.tape_overruns + ms.tape_overruns;
    report(5, bad == 0 && tight, "tape bounds 2n+1 and n+1",
           std::to_string(ps.tape_overruns + ms.tape_overruns) + " overruns, " + std::to_string(bad) +
               " bound violations; \"(\"^n writes $ at index 2n-1 for n = 1..14: " + (tight ? "yes" : "no"));
  }

  // 6. dead transitions
  {
    const auto bad = ps.dead_transitions + ms.dead_transitions + family(ps, "dead transition") + family(ms, "dead transition");
    report(6, bad == 0, "no dead transition fires", std::to_string(bad) + " dead transitions");
  }

  // 7. final-tape postconditions
  {
    const auto bad = final_failures + family(ps, "accept postcondition") + family(ps, "reject postcondition");
    const bool covered = even_accepts == accepts && via_q4 > 0 && via_q4_minus_one == via_q4 && via_q0 > 0;
    report(7, bad == 0 && covered, "final-tape postconditions on every halted parentheses run",
           std::to_string(bad) + " failures; " + std::to_string(even_accepts) + "/" + std::to_string(accepts) +
               " accepts of even length; reject via q0 " + std::to_string(via_q0) + ", via q4 " +
               std::to_string(via_q4) + " (leftMinusRight(a, k+1) == -1 in " + std::to_string(via_q4_minus_one) + ")");
  }

  // 8. golden traces
  {
    const std::string dir = DECIDER_LAB_GOLDEN_DIR;
    const auto prefix_rows = trace_text("((", [](const std::string&, std::size_t i) { return i < 6; });
    const auto q0_rows = trace_text("(())()", [](const std::string& l, std::size_t) {
      return l.compare(5, 3, "q0 ") == 0 || l.compare(5, 6, "q_acc ") == 0;
    });
    const auto want4 = read_file(dir + "/paren_lp_lp_prefix.txt");
    const auto want3 = read_file(dir + "/paren_balanced_q0_rows.txt");
    const bool ok4 = !want4.empty() && prefix_rows == want4;
    const bool ok3 = !want3.empty() && q0_rows == want3;
    report(8, ok4 && ok3, "golden traces",
           std::string("\"((\" first six rows ") + (ok4 ? "match" : "differ") + ", \"(())()\" q0/q_acc rows " +
               (ok3 ? "match" : "differ"));
  }

  // 9. combinator state counts
  {
    std::string got;
    bool ok = true;
    std::size_t i = 0;
    for (const auto& [name, m] : comb::m2_combinators().all()) {
      const auto c = comb::state_count(*m);
      got += (got.empty() ? "" : " ") + std::to_string(c);
      ok = ok && c == comb::kExpectedStateCounts[i++];
    }
    report(9, ok, "combinator state counts", got);
  }

  // 10. realization
  {
    std::vector<std::size_t> ns;
    for (std::size_t n = 0; n <= 1024; ++n) ns.push_back(n);
    for (std::size_t n : {4095u, 4096u, 65536u}) ns.push_back(n);
    std::uint64_t bad = 0, agree = 0;
    auto t = Clock::now();
    for (auto n : ns) {
      const auto r = comb::realization_check(n);
      if (!r.ok) ++bad;
      if (r.error.empty() && r.accepted == r.monolithic) ++agree;
    }
    const double d = seconds_since(t);
    report(10, bad == 0 && agree == ns.size() && d < 60.0, "combinator machine realizes isPowerOf2",
           std::to_string(ns.size()) + " inputs, " + std::to_string(bad) + " failures, combinator == table machine on " +
               std::to_string(agree) + ", " + fmt_seconds(d));
  }

  // 11. lemmas
  {
    const auto lem = oracles::check_power_lemmas(65536);
    std::uint64_t acc_bad = 0, acc_runs = 0;
    for (const auto& w : verify::paren_words(10)) {
      ghost::HarnessOptions o;
      o.invariants = false;
      o.variant = false;
      o.final_checks = false;
      ghost::ParenHarness h(w, o);
      tm::run(paren, w, tm::default_fuel(w.size()), &h);
      ++acc_runs;
      if (!ghost::accumulated_invariant_check(h.accumulated_trace())) ++acc_bad;
    }
    // write-locality needs an X write, which first happens at n = 2; the snapshot lemmas need n >= 1
    const std::uint64_t pos = ms.runs - 1, two_up = ms.runs - 2;
    const bool fired = ms.runs_only_zeroes == pos && ms.runs_num_zeroes == pos && ms.runs_write_locality == two_up;
    const auto lemma_bad = family(ms, "lemma");
    report(11, lem.passed && lem.checked == 65537 && acc_bad == 0 && acc_runs == 2047 && fired && lemma_bad == 0,
           "lemma suite",
           std::string("power lemmas to 65536 ") + (lem.passed ? "hold" : "fail") + "; accumulated invariant on " +
               std::to_string(acc_runs) + " traces, " + std::to_string(acc_bad) + " failures; M2 runs firing " +
               "onlyZeroes " + std::to_string(ms.runs_only_zeroes) + "/" + std::to_string(pos) + ", numZeroes " +
               std::to_string(ms.runs_num_zeroes) + "/" + std::to_string(pos) + ", write-locality " +
               std::to_string(ms.runs_write_locality) + "/" + std::to_string(two_up) + ", " + std::to_string(lemma_bad) +
               " lemma violations");
  }

  return failures == 0 ? 0 : 1;
}
