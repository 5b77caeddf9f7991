// Single-tape Sipser machines over a preallocated, fixed-length tape.
//
// The tape never grows. A machine that tries to read past the last square
// fails with TapeOverrun instead of being handed a fresh blank, so the tape
// sizes chosen per machine are checked rather than assumed.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace decider_lab::tm {

using StateId = std::uint8_t;
using SymbolId = std::uint8_t;

/// Sequence of input-alphabet symbol ids.
using Word = std::vector<SymbolId>;

enum class Move : std::uint8_t { Left, Right };

enum class Decision : std::uint8_t { Accept, Reject };

std::string_view to_string(Decision d);
char to_char(Move m);

struct Transition {
  StateId next = 0;
  SymbolId write = 0;
  Move move = Move::Right;

  bool operator==(const Transition&) const = default;
};

/// Affine tape-length policy: per_symbol * n + extra.
struct TapeSize {
  std::size_t per_symbol = 1;
  std::size_t extra = 1;

  std::size_t operator()(std::size_t input_length) const {
    return per_symbol * input_length + extra;
  }
  bool operator==(const TapeSize&) const = default;
};

/// Everything needed to build a MachineDef. Validated by the constructor.
struct MachineSpec {
  std::string name;
  std::vector<std::string> state_names;
  StateId start = 0;
  StateId accept = 0;
  StateId reject = 0;
  std::vector<char> tape_glyphs;   // one per tape symbol, used for rendering
  SymbolId blank = 0;
  std::vector<char> input_glyphs;  // one per input symbol
  std::vector<SymbolId> input_embed;
  TapeSize tape_size;
  /// Row-major [state][symbol]; an empty entry is a dead pair.
  std::vector<std::optional<Transition>> table;
};

class MachineDef {
 public:
  explicit MachineDef(MachineSpec spec);

  const std::string& name() const { return spec_.name; }
  std::size_t num_states() const { return spec_.state_names.size(); }
  std::size_t num_tape_symbols() const { return spec_.tape_glyphs.size(); }
  std::size_t num_input_symbols() const { return spec_.input_glyphs.size(); }

  StateId start() const { return spec_.start; }
  StateId accept() const { return spec_.accept; }
  StateId reject() const { return spec_.reject; }
  SymbolId blank() const { return spec_.blank; }
  bool is_halting(StateId s) const { return s == spec_.accept || s == spec_.reject; }

  const std::optional<Transition>& transition(StateId s, SymbolId sym) const {
    return spec_.table[index(s, sym)];
  }
  std::size_t live_transition_count() const;

  /// Copy of this machine with one table entry replaced (fault injection).
  MachineDef with_transition(StateId s, SymbolId sym, std::optional<Transition> t) const;

  std::size_t tape_size(std::size_t input_length) const { return spec_.tape_size(input_length); }
  const TapeSize& tape_size_policy() const { return spec_.tape_size; }
  SymbolId embed(SymbolId input_symbol) const { return spec_.input_embed.at(input_symbol); }

  const std::string& state_name(StateId s) const { return spec_.state_names.at(s); }
  std::optional<StateId> state_by_name(std::string_view name) const;
  char glyph(SymbolId sym) const { return spec_.tape_glyphs.at(sym); }
  std::optional<SymbolId> symbol_by_glyph(char c) const;
  char input_glyph(SymbolId sym) const { return spec_.input_glyphs.at(sym); }

  /// Parses a word written with the input glyphs; nullopt on a foreign character.
  std::optional<Word> parse_word(std::string_view text) const;
  std::string render_word(const Word& w) const;
  std::string render_tape(std::span<const SymbolId> tape) const;

 private:
  std::size_t index(StateId s, SymbolId sym) const {
    return static_cast<std::size_t>(s) * spec_.tape_glyphs.size() + sym;
  }

  MachineSpec spec_;
};

/// Instantaneous description. head may equal tape.size() only once halted.
struct Configuration {
  StateId state = 0;
  std::vector<SymbolId> tape;
  std::size_t head = 0;
  std::uint64_t steps = 0;

  bool operator==(const Configuration&) const = default;
};

Configuration start_configuration(const MachineDef& m, const Word& input);

// Engine errors. Violations found by checkers are data, these are not.
class EngineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DeadTransitionError : public EngineError {
 public:
  DeadTransitionError(StateId state, SymbolId symbol, std::size_t head, const std::string& what)
      : EngineError(what), state(state), symbol(symbol), head(head) {}
  StateId state;
  SymbolId symbol;
  std::size_t head;
};

class TapeOverrun : public EngineError {
 public:
  TapeOverrun(std::size_t head, const std::string& what) : EngineError(what), head(head) {}
  std::size_t head;
};

class FuelExhausted : public EngineError {
 public:
  FuelExhausted(std::uint64_t fuel, const std::string& what) : EngineError(what), fuel(fuel) {}
  std::uint64_t fuel;
};

struct Continue {
  Configuration config;
};
struct Halted {
  Configuration config;
};
struct DeadTransition {
  StateId state;
  SymbolId symbol;
  std::size_t head;
};

using StepOutcome = std::variant<Continue, Halted, DeadTransition>;

/// Pure single step. Throws TapeOverrun when a running machine sits past the tape.
StepOutcome step(const MachineDef& m, const Configuration& c);

/// What fired on one step; position is the head square before the move.
struct StepEvent {
  StateId from;
  SymbolId read;
  std::size_t position;
  Transition fired;
};

/// In-place variant of step() used by run(). Returns nullopt when c is halted.
/// Throws DeadTransitionError / TapeOverrun.
std::optional<StepEvent> step_in_place(const MachineDef& m, Configuration& c);

/// Hook for ghost tracking and tracing. Every configuration of a run is passed to
/// on_configuration exactly once, the start and the final one included; on_step
/// is called after each step, before the resulting configuration is announced.
class RunObserver {
 public:
  virtual ~RunObserver() = default;
  virtual void on_configuration(const Configuration&) {}
  virtual void on_step(const StepEvent&, const Configuration& /*after*/) {}
};

/// Fans out to several observers, in order.
class ObserverList : public RunObserver {
 public:
  void add(RunObserver& o) { observers_.push_back(&o); }
  void on_configuration(const Configuration& c) override;
  void on_step(const StepEvent& e, const Configuration& after) override;

 private:
  std::vector<RunObserver*> observers_;
};

struct RunResult {
  Decision decision = Decision::Reject;
  Configuration final_config;
  std::uint64_t steps = 0;
  std::size_t max_head = 0;
};

/// 100 * (n + 2)^2.
std::uint64_t default_fuel(std::size_t input_length);

/// Runs to a halting state. Throws FuelExhausted after `fuel` steps without
/// halting; DeadTransitionError and TapeOverrun propagate from step_in_place.
RunResult run(const MachineDef& m, const Word& input, std::uint64_t fuel,
              RunObserver* observer = nullptr);

}  // namespace decider_lab::tm
