// The two built-in deciders: balanced parentheses and Sipser's M2 (powers of two).

#pragma once

#include "decider_lab/tm_core.hpp"

namespace decider_lab::machines {

namespace paren {

enum State : tm::StateId { q0, q1, q2, q3, q4, q5, q_acc, q_rej };
enum Sym : tm::SymbolId { B, L, R, X, S };  // blank ( ) marking stack
enum Input : tm::SymbolId { LP, RP };

inline constexpr std::size_t kNumStates = 8;
inline constexpr std::size_t kNumSymbols = 5;

}  // namespace paren

namespace m2 {

enum State : tm::StateId { q0, q1, q2, q3, q4, q_acc, q_rej };
enum Sym : tm::SymbolId { B, Z, X };  // blank zero cross
enum Input : tm::SymbolId { Zero };

inline constexpr std::size_t kNumStates = 7;
inline constexpr std::size_t kNumSymbols = 3;

}  // namespace m2

/// Tape length 2n+1. Six (state, symbol) pairs are dead.
const tm::MachineDef& parentheses_machine();

/// Tape length n+1. Every non-halting pair is live.
const tm::MachineDef& sipser_m2_machine();

/// 0^n as an M2 input word.
tm::Word zeros(std::size_t n);

}  // namespace decider_lab::machines
