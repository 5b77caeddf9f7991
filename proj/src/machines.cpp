#include "decider_lab/machines.hpp"

namespace decider_lab::machines {

using tm::Move;
using tm::Transition;

namespace {

struct TableBuilder {
  std::size_t num_symbols;
  std::vector<std::optional<Transition>> table;

  TableBuilder(std::size_t states, std::size_t symbols)
      : num_symbols(symbols), table(states * symbols) {}

  void set(tm::StateId from, tm::SymbolId read, tm::SymbolId write, Move mv, tm::StateId to) {
    table[from * num_symbols + read] = Transition{to, write, mv};
  }
  // Loop edge that rewrites the symbol it reads.
  void keep(tm::StateId from, std::initializer_list<tm::SymbolId> reads, Move mv, tm::StateId to) {
    for (auto r : reads) set(from, r, r, mv, to);
  }
};

tm::MachineDef build_parentheses() {
  using namespace paren;
  TableBuilder t(kNumStates, kNumSymbols);
  t.set(q0, L, X, Move::Right, q1);
  t.set(q0, R, X, Move::Right, q3);
  t.keep(q0, {B}, Move::Right, q_acc);
  t.keep(q0, {S}, Move::Right, q_rej);

  t.keep(q1, {L, R, S}, Move::Right, q1);
  t.set(q1, B, S, Move::Left, q2);

  t.keep(q2, {L, R, S}, Move::Left, q2);
  t.set(q2, X, L, Move::Right, q0);

  t.keep(q3, {L, R, S}, Move::Right, q3);
  t.keep(q3, {B}, Move::Left, q4);

  t.keep(q4, {L, R, X}, Move::Right, q_rej);
  t.set(q4, S, B, Move::Left, q5);

  t.keep(q5, {L, R, S}, Move::Left, q5);
  t.set(q5, X, R, Move::Right, q0);

  tm::MachineSpec spec;
  spec.name = "paren";
  spec.state_names = {"q0", "q1", "q2", "q3", "q4", "q5", "q_acc", "q_rej"};
  spec.start = q0;
  spec.accept = q_acc;
  spec.reject = q_rej;
  spec.tape_glyphs = {'_', '(', ')', 'x', '$'};
  spec.blank = B;
  spec.input_glyphs = {'(', ')'};
  spec.input_embed = {L, R};
  spec.tape_size = {2, 1};
  spec.table = std::move(t.table);
  return tm::MachineDef(std::move(spec));
}

tm::MachineDef build_sipser_m2() {
  using namespace m2;
  TableBuilder t(kNumStates, kNumSymbols);
  t.set(q0, Z, B, Move::Right, q1);
  t.keep(q0, {B, X}, Move::Right, q_rej);

  t.set(q1, Z, X, Move::Right, q2);
  t.keep(q1, {X}, Move::Right, q1);
  t.keep(q1, {B}, Move::Right, q_acc);

  t.keep(q2, {Z}, Move::Right, q3);
  t.keep(q2, {X}, Move::Right, q2);
  t.keep(q2, {B}, Move::Left, q4);

  t.set(q3, Z, X, Move::Right, q2);
  t.keep(q3, {X}, Move::Right, q3);
  t.keep(q3, {B}, Move::Right, q_rej);

  t.keep(q4, {Z, X}, Move::Left, q4);
  t.keep(q4, {B}, Move::Right, q1);

  tm::MachineSpec spec;
  spec.name = "m2";
  spec.state_names = {"q0", "q1", "q2", "q3", "q4", "q_acc", "q_rej"};
  spec.start = q0;
  spec.accept = q_acc;
  spec.reject = q_rej;
  spec.tape_glyphs = {'_', '0', 'x'};
  spec.blank = B;
  spec.input_glyphs = {'0'};
  spec.input_embed = {Z};
  spec.tape_size = {1, 1};
  spec.table = std::move(t.table);
  return tm::MachineDef(std::move(spec));
}

}  // namespace

const tm::MachineDef& parentheses_machine() {
  static const tm::MachineDef m = build_parentheses();
  return m;
}

const tm::MachineDef& sipser_m2_machine() {
  static const tm::MachineDef m = build_sipser_m2();
  return m;
}

tm::Word zeros(std::size_t n) { return tm::Word(n, m2::Zero); }

}  // namespace decider_lab::machines
