#include "decider_lab/tm_core.hpp"

#include <algorithm>
#include <sstream>

namespace decider_lab::tm {

std::string_view to_string(Decision d) { return d == Decision::Accept ? "accept" : "reject"; }

char to_char(Move m) { return m == Move::Left ? 'L' : 'R'; }

MachineDef::MachineDef(MachineSpec spec) : spec_(std::move(spec)) {
  const std::size_t nq = spec_.state_names.size();
  const std::size_t ng = spec_.tape_glyphs.size();
  auto fail = [this](const std::string& why) {
    throw std::invalid_argument("machine '" + spec_.name + "': " + why);
  };
  if (spec_.start >= nq || spec_.accept >= nq || spec_.reject >= nq)
    fail("start/accept/reject must be states");
  if (spec_.accept == spec_.reject) fail("accept and reject must differ");
  if (spec_.blank >= ng) fail("blank must be a tape symbol");
  if (spec_.input_embed.size() != spec_.input_glyphs.size())
    fail("every input symbol needs an embedding");
  for (SymbolId e : spec_.input_embed) {
    if (e >= ng) fail("input embedding leaves the tape alphabet");
    if (e == spec_.blank) fail("blank must not be an input symbol");
  }
  if (spec_.table.size() != nq * ng) fail("transition table must be states x symbols");
  for (std::size_t q = 0; q < nq; ++q) {
    for (std::size_t g = 0; g < ng; ++g) {
      const auto& t = spec_.table[q * ng + g];
      if (!t) continue;
      if (is_halting(static_cast<StateId>(q))) fail("halting state " + spec_.state_names[q] + " has a transition");
      if (t->next >= nq) fail("transition target out of range");
      if (t->write >= ng) fail("written symbol out of range");
    }
  }
}

std::size_t MachineDef::live_transition_count() const {
  return static_cast<std::size_t>(
      std::count_if(spec_.table.begin(), spec_.table.end(), [](const auto& t) { return t.has_value(); }));
}

MachineDef MachineDef::with_transition(StateId s, SymbolId sym, std::optional<Transition> t) const {
  MachineSpec copy = spec_;
  copy.table.at(index(s, sym)) = t;
  copy.name += " (mutated)";
  return MachineDef(std::move(copy));
}

std::optional<StateId> MachineDef::state_by_name(std::string_view name) const {
  for (std::size_t i = 0; i < spec_.state_names.size(); ++i)
    if (spec_.state_names[i] == name) return static_cast<StateId>(i);
  return std::nullopt;
}

std::optional<SymbolId> MachineDef::symbol_by_glyph(char c) const {
  for (std::size_t i = 0; i < spec_.tape_glyphs.size(); ++i)
    if (spec_.tape_glyphs[i] == c) return static_cast<SymbolId>(i);
  return std::nullopt;
}

std::optional<Word> MachineDef::parse_word(std::string_view text) const {
  Word w;
  w.reserve(text.size());
  for (char c : text) {
    auto it = std::find(spec_.input_glyphs.begin(), spec_.input_glyphs.end(), c);
    if (it == spec_.input_glyphs.end()) return std::nullopt;
    w.push_back(static_cast<SymbolId>(it - spec_.input_glyphs.begin()));
  }
  return w;
}

std::string MachineDef::render_word(const Word& w) const {
  std::string out;
  out.reserve(w.size());
  for (SymbolId s : w) out.push_back(input_glyph(s));
  return out;
}

std::string MachineDef::render_tape(std::span<const SymbolId> tape) const {
  std::string out;
  out.reserve(tape.size());
  for (SymbolId s : tape) out.push_back(glyph(s));
  return out;
}

Configuration start_configuration(const MachineDef& m, const Word& input) {
  Configuration c;
  c.state = m.start();
  c.tape.assign(m.tape_size(input.size()), m.blank());
  for (std::size_t i = 0; i < input.size(); ++i) c.tape[i] = m.embed(input[i]);
  c.head = 0;
  c.steps = 0;
  return c;
}

namespace {

std::string describe(const MachineDef& m, StateId s, SymbolId sym, std::size_t head) {
  std::ostringstream os;
  os << m.name() << ": no transition for (" << m.state_name(s) << ", '" << m.glyph(sym)
     << "') at head " << head;
  return os.str();
}

}  // namespace

std::optional<StepEvent> step_in_place(const MachineDef& m, Configuration& c) {
  if (m.is_halting(c.state)) return std::nullopt;
  if (c.head >= c.tape.size()) {
    std::ostringstream os;
    os << m.name() << ": head " << c.head << " ran off a tape of length " << c.tape.size()
       << " in state " << m.state_name(c.state);
    throw TapeOverrun(c.head, os.str());
  }
  const SymbolId read = c.tape[c.head];
  const auto& t = m.transition(c.state, read);
  if (!t) throw DeadTransitionError(c.state, read, c.head, describe(m, c.state, read, c.head));

  StepEvent ev{c.state, read, c.head, *t};
  c.tape[c.head] = t->write;
  if (t->move == Move::Right) {
    ++c.head;
  } else if (c.head > 0) {
    --c.head;
  }
  c.state = t->next;
  ++c.steps;
  return ev;
}

StepOutcome step(const MachineDef& m, const Configuration& c) {
  if (m.is_halting(c.state)) return Halted{c};
  Configuration next = c;
  try {
    step_in_place(m, next);
  } catch (const DeadTransitionError& e) {
    return DeadTransition{e.state, e.symbol, e.head};
  }
  return Continue{std::move(next)};
}

void ObserverList::on_configuration(const Configuration& c) {
  for (auto* o : observers_) o->on_configuration(c);
}

void ObserverList::on_step(const StepEvent& e, const Configuration& after) {
  for (auto* o : observers_) o->on_step(e, after);
}

std::uint64_t default_fuel(std::size_t input_length) {
  const std::uint64_t k = static_cast<std::uint64_t>(input_length) + 2;
  return 100 * k * k;
}

RunResult run(const MachineDef& m, const Word& input, std::uint64_t fuel, RunObserver* observer) {
  if (fuel == 0) throw std::invalid_argument("run: fuel must be positive");
  RunResult r;
  Configuration c = start_configuration(m, input);
  r.max_head = c.head;
  if (observer) observer->on_configuration(c);
  while (!m.is_halting(c.state)) {
    if (c.steps >= fuel) {
      std::ostringstream os;
      os << m.name() << ": no halt within " << fuel << " steps";
      throw FuelExhausted(fuel, os.str());
    }
    const auto ev = step_in_place(m, c);
    r.max_head = std::max(r.max_head, c.head);
    if (observer) {
      observer->on_step(*ev, c);
      observer->on_configuration(c);
    }
  }
  r.decision = c.state == m.accept() ? Decision::Accept : Decision::Reject;
  r.steps = c.steps;
  r.final_config = std::move(c);
  return r;
}

}  // namespace decider_lab::tm
