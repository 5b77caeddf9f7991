#include "decider_lab/commands.hpp"

#include <charconv>
#include <stdexcept>

#include "decider_lab/accumulated.hpp"
#include "decider_lab/m2_combinators.hpp"
#include "decider_lab/m2_ghost.hpp"
#include "decider_lab/machines.hpp"
#include "decider_lab/oracles.hpp"
#include "decider_lab/paren_ghost.hpp"

namespace decider_lab::cli {

using verify::MachineKind;

std::uint64_t resolve_fuel(std::optional<std::uint64_t> flag, const char* env, std::size_t n) {
  if (flag) {
    if (*flag == 0) throw std::invalid_argument("--fuel must be positive");
    return *flag;
  }
  if (env && *env) {
    const std::string_view text(env);
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || value == 0)
      throw std::invalid_argument("DECIDER_LAB_FUEL must be a positive integer, got '" + std::string(text) + "'");
    return value;
  }
  return tm::default_fuel(n);
}

std::optional<MachineKind> parse_machine(std::string_view name) {
  if (name == "paren") return MachineKind::Paren;
  if (name == "m2") return MachineKind::M2;
  return std::nullopt;
}

namespace {

// The input word, or an error message.
struct Resolved {
  tm::Word word;
  std::string error;
};

Resolved resolve_input(const RunArgs& a) {
  const auto& m = verify::machine_for(a.machine);
  if (a.machine == MachineKind::M2 && a.n) {
    if (a.input) return {{}, "give either an input word or --n, not both"};
    return {machines::zeros(*a.n), {}};
  }
  if (a.n) return {{}, "--n only applies to m2"};
  if (!a.input) return {{}, "missing input word"};
  auto w = m.parse_word(*a.input);
  if (!w) {
    std::string allowed;
    for (std::size_t i = 0; i < m.num_input_symbols(); ++i) allowed += m.input_glyph(static_cast<tm::SymbolId>(i));
    return {{}, "input '" + *a.input + "' has symbols outside {" + allowed + "}"};
  }
  return {std::move(*w), {}};
}

std::string bound_text(MachineKind k) { return k == MachineKind::Paren ? "2n+1" : "n+1"; }

}  // namespace

int cmd_run(const RunArgs& a, std::ostream& out, std::ostream& err) {
  const auto in = resolve_input(a);
  if (!in.error.empty()) {
    err << "error: " << in.error << "\n";
    return kBadInput;
  }
  const auto& m = verify::machine_for(a.machine);
  std::uint64_t fuel = 0;
  try {
    fuel = resolve_fuel(a.fuel, a.fuel_env, in.word.size());
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }
  try {
    const auto r = tm::run(m, in.word, fuel);
    out << tm::to_string(r.decision) << "\n";
    out << "steps: " << r.steps << "\n";
    out << "max head: " << r.max_head << "\n";
    out << "tape: " << r.final_config.tape.size() << " cells (" << bound_text(a.machine) << " with n=" << in.word.size()
        << "), max head " << r.max_head << " of " << r.final_config.tape.size() << "\n";
    return r.decision == tm::Decision::Accept ? kOk : kReject;
  } catch (const tm::EngineError& e) {
    err << "engine error: " << e.what() << "\n";
    return kEngineError;
  }
}

int cmd_trace(const TraceArgs& a, std::ostream& out, std::ostream& err) {
  const auto in = resolve_input(a.run);
  if (!in.error.empty()) {
    err << "error: " << in.error << "\n";
    return kBadInput;
  }
  const auto& m = verify::machine_for(a.run.machine);
  std::uint64_t fuel = 0;
  try {
    fuel = resolve_fuel(a.run.fuel, a.run.fuel_env, in.word.size());
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }

  ghost::HarnessOptions quiet;
  quiet.invariants = false;
  quiet.final_checks = false;
  quiet.lemmas = false;
  quiet.variant = a.variant;
  std::optional<ghost::ParenHarness> paren;
  std::optional<ghost::M2Harness> m2;
  tm::ObserverList observers;
  trace::TraceWriter writer(m, out, a.format);

  // Each configuration's variant is taken from the harness, which has just updated it.
  if (a.run.machine == MachineKind::Paren) {
    paren.emplace(in.word, quiet);
    observers.add(*paren);
    if (a.ghost)
      writer.set_ghost([&] {
        const auto& g = paren->ghost();
        return nlohmann::ordered_json{{"k", g.k}, {"s", g.s}, {"s'", g.s_p}, {"k'", g.k_p}, {"lp", g.lp}, {"rp", g.rp}};
      });
    if (a.variant) writer.set_variant([&] { return paren->last_variant(); });
  } else {
    m2.emplace(in.word.size(), quiet);
    observers.add(*m2);
    if (a.ghost)
      writer.set_ghost([&] {
        const auto& snap = m2->ghost().snap;
        nlohmann::ordered_json j;
        j["snap"] = snap ? nlohmann::ordered_json(m.render_tape(*snap)) : nlohmann::ordered_json(nullptr);
        return j;
      });
    if (a.variant) writer.set_variant([&] { return m2->last_variant(); });
  }
  observers.add(writer);

  try {
    const auto r = tm::run(m, in.word, fuel, &observers);
    return r.decision == tm::Decision::Accept ? kOk : kReject;
  } catch (const tm::EngineError& e) {
    err << "engine error: " << e.what() << "\n";
    return kEngineError;
  }
}

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  verify::VerifyOptions o;
  o.machine = a.machine;
  o.max_len = a.max_len;
  o.samples = a.samples;
  o.jobs = a.jobs;
  o.max_findings = a.max_findings;
  try {
    o.checks = verify::Checks::parse(a.checks);
    if (a.mutate) o.mutation = verify::Mutation::parse(verify::machine_for(a.machine), *a.mutate);
    if (a.fuel || (a.fuel_env && *a.fuel_env)) o.fuel = resolve_fuel(a.fuel, a.fuel_env, 0);
    if (a.machine == MachineKind::Paren && a.max_len > 24)
      throw std::invalid_argument("--max-len above 24 is too many parentheses words");
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }

  const auto s = verify::run_verify(o);
  out << verify::render_summary(o, s);
  for (const auto& f : s.findings) {
    err << "violation: input " << f.input << " step " << f.violation.step << " state " << f.violation.state << ": "
        << f.violation.clause << " [" << f.violation.expected << "] " << f.violation.actual << "\n";
  }
  return s.exit_code();
}

int cmd_equiv_combinator(const EquivArgs& a, std::ostream& out, std::ostream& err) {
  const auto machines = comb::build_m2_combinators(a.swap_accept_reject ? comb::Fault::SwapAcceptReject : comb::Fault::None);
  bool ok = true;

  out << "state counts:";
  std::size_t i = 0;
  for (const auto& [name, m] : machines.all()) {
    const auto count = comb::state_count(*m);
    out << " " << count;
    if (count != comb::kExpectedStateCounts[i]) {
      err << "mismatch: " << name << " has " << count << " states, expected " << comb::kExpectedStateCounts[i] << "\n";
      ok = false;
    }
    ++i;
  }
  out << "\n";

  std::vector<std::uint64_t> ns;
  for (std::uint64_t n = 0; n <= a.max_n; ++n) ns.push_back(n);
  for (auto s : a.samples)
    if (s > a.max_n) ns.push_back(s);

  std::uint64_t failures = 0, accepted = 0, actions = 0;
  for (auto n : ns) {
    const auto r = comb::realization_check(machines.sipser_m2, n, comb::default_comb_fuel(n));
    actions += r.actions;
    accepted += r.accepted;
    if (!r.ok) {
      if (failures < 10)
        err << "realization failed at n=" << n << ": combinator " << (r.accepted ? "accept" : "reject") << ", isPowerOf2 "
            << (r.expected ? "true" : "false") << ", table machine " << (r.monolithic ? "accept" : "reject")
            << (r.error.empty() ? "" : " (" + r.error + ")") << "\n";
      ++failures;
    }
  }
  if (ns.size() == 1 && ns[0] == 0 && failures == 0) out << "n=0: Reject\n";
  out << "realization: " << ns.size() << " inputs, " << accepted << " accepted, " << failures << " failures, "
      << actions << " primitive actions\n";
  ok = ok && failures == 0;
  out << (ok ? "result: ok" : "result: FAILED") << "\n";
  return ok ? kOk : kViolation;
}

int cmd_lemmas(const LemmaArgs& a, std::ostream& out, std::ostream& err) {
  if (a.max_n < 2) {
    err << "error: --max-n must be at least 2\n";
    return kBadInput;
  }
  auto lemmas = oracles::standard_power_lemmas();
  if (a.inject) {
    if (*a.inject != "even-pred") {
      err << "error: unknown injection '" << *a.inject << "' (known: even-pred)\n";
      return kBadInput;
    }
    lemmas.even = [](std::uint64_t n) {
      return n % 2 != 0 || n == 0 || oracles::is_power_of_2(n) == oracles::is_power_of_2(n - 1);
    };
  }
  const auto report = oracles::check_power_lemmas(a.max_n, lemmas);
  out << "power lemmas: " << report.checked << " values checked";
  if (report.passed) {
    out << ", all hold\n";
  } else {
    out << ", " << *report.failed_lemma << " fails at n=" << *report.counterexample << "\n";
    err << "counterexample: lemma " << *report.failed_lemma << " at n=" << *report.counterexample << "\n";
  }

  std::uint64_t traces = 0, bad = 0;
  for (const auto& w : verify::paren_words(a.paren_len)) {
    ghost::HarnessOptions h;
    h.invariants = false;
    h.variant = false;
    h.final_checks = false;
    ghost::ParenHarness harness(w, h);
    tm::run(machines::parentheses_machine(), w, tm::default_fuel(w.size()), &harness);
    ++traces;
    if (!ghost::accumulated_invariant_check(harness.accumulated_trace())) {
      if (bad < 10)
        err << "accumulated invariant fails on \"" << machines::parentheses_machine().render_word(w) << "\"\n";
      ++bad;
    }
  }
  out << "accumulated invariant: " << traces << " parentheses traces, " << bad << " failures\n";
  const bool ok = report.passed && bad == 0;
  out << (ok ? "result: ok" : "result: FAILED") << "\n";
  return ok ? kOk : kViolation;
}

}  // namespace decider_lab::cli
