#include <doctest.h>

#include <algorithm>
#include <map>
#include <string>
#include <tuple>

#include "decider_lab/machines.hpp"
#include "decider_lab/oracles.hpp"
#include "decider_lab/tm_core.hpp"

using namespace decider_lab;
using tm::Move;

namespace P = machines::paren;
namespace M = machines::m2;

namespace {

// Both tables written out again edge by edge, as glyph strings, so that the
// built tables are compared against a second, independent transcription.
using Edge = std::tuple<std::string, char, std::string, char, char>;  // from, read, to, write, move

const std::vector<Edge> kParenEdges = {
    {"q0", '(', "q1", 'x', 'R'},  {"q0", ')', "q3", 'x', 'R'},  {"q0", '_', "q_acc", '_', 'R'},
    {"q0", '$', "q_rej", '$', 'R'},
    {"q1", '(', "q1", '(', 'R'},  {"q1", ')', "q1", ')', 'R'},  {"q1", '$', "q1", '$', 'R'},
    {"q1", '_', "q2", '$', 'L'},
    {"q2", '(', "q2", '(', 'L'},  {"q2", ')', "q2", ')', 'L'},  {"q2", '$', "q2", '$', 'L'},
    {"q2", 'x', "q0", '(', 'R'},
    {"q3", '(', "q3", '(', 'R'},  {"q3", ')', "q3", ')', 'R'},  {"q3", '$', "q3", '$', 'R'},
    {"q3", '_', "q4", '_', 'L'},
    {"q4", '(', "q_rej", '(', 'R'}, {"q4", ')', "q_rej", ')', 'R'}, {"q4", 'x', "q_rej", 'x', 'R'},
    {"q4", '$', "q5", '_', 'L'},
    {"q5", '(', "q5", '(', 'L'},  {"q5", ')', "q5", ')', 'L'},  {"q5", '$', "q5", '$', 'L'},
    {"q5", 'x', "q0", ')', 'R'},
};

const std::vector<Edge> kM2Edges = {
    {"q0", '0', "q1", '_', 'R'}, {"q0", '_', "q_rej", '_', 'R'}, {"q0", 'x', "q_rej", 'x', 'R'},
    {"q1", '0', "q2", 'x', 'R'}, {"q1", 'x', "q1", 'x', 'R'},    {"q1", '_', "q_acc", '_', 'R'},
    {"q2", '0', "q3", '0', 'R'}, {"q2", 'x', "q2", 'x', 'R'},    {"q2", '_', "q4", '_', 'L'},
    {"q3", '0', "q2", 'x', 'R'}, {"q3", 'x', "q3", 'x', 'R'},    {"q3", '_', "q_rej", '_', 'R'},
    {"q4", '0', "q4", '0', 'L'}, {"q4", 'x', "q4", 'x', 'L'},    {"q4", '_', "q1", '_', 'R'},
};

void check_table(const tm::MachineDef& m, const std::vector<Edge>& edges) {
  std::map<std::pair<tm::StateId, tm::SymbolId>, const Edge*> want;
  for (const auto& e : edges) {
    auto q = m.state_by_name(std::get<0>(e));
    auto s = m.symbol_by_glyph(std::get<1>(e));
    REQUIRE(q);
    REQUIRE(s);
    want[{*q, *s}] = &e;
  }
  REQUIRE(want.size() == edges.size());
  for (std::size_t q = 0; q < m.num_states(); ++q) {
    for (std::size_t s = 0; s < m.num_tape_symbols(); ++s) {
      const auto& t = m.transition(static_cast<tm::StateId>(q), static_cast<tm::SymbolId>(s));
      auto it = want.find({static_cast<tm::StateId>(q), static_cast<tm::SymbolId>(s)});
      CAPTURE(m.state_name(static_cast<tm::StateId>(q)));
      CAPTURE(m.glyph(static_cast<tm::SymbolId>(s)));
      if (it == want.end()) {
        CHECK_FALSE(t.has_value());
        continue;
      }
      REQUIRE(t.has_value());
      const auto& [from, read, to, write, mv] = *it->second;
      CHECK(m.state_name(t->next) == to);
      CHECK(m.glyph(t->write) == write);
      CHECK(tm::to_char(t->move) == mv);
    }
  }
}

tm::Word pw(const std::string& s) { return *machines::parentheses_machine().parse_word(s); }

}  // namespace

TEST_CASE("parentheses table matches an independent transcription") {
  const auto& m = machines::parentheses_machine();
  check_table(m, kParenEdges);
  CHECK(m.live_transition_count() == 24);
  const std::pair<P::State, P::Sym> dead[] = {{P::q0, P::X}, {P::q1, P::X}, {P::q2, P::B},
                                              {P::q3, P::X}, {P::q4, P::B}, {P::q5, P::B}};
  for (auto [q, s] : dead) CHECK_FALSE(m.transition(q, s).has_value());
}

TEST_CASE("M2 table matches an independent transcription") {
  const auto& m = machines::sipser_m2_machine();
  check_table(m, kM2Edges);
  CHECK(m.live_transition_count() == 15);
  CHECK(m.transition(M::q0, M::X) == tm::Transition{M::q_rej, M::X, Move::Right});
}

TEST_CASE("lookup examples") {
  const auto& p = machines::parentheses_machine();
  CHECK(p.transition(P::q1, P::B) == tm::Transition{P::q2, P::S, Move::Left});
  CHECK_FALSE(p.transition(P::q0, P::X));
  CHECK(p.transition(P::q4, P::S) == tm::Transition{P::q5, P::B, Move::Left});
  const auto& m = machines::sipser_m2_machine();
  CHECK(m.transition(M::q3, M::Z) == tm::Transition{M::q2, M::X, Move::Right});
  CHECK(m.transition(M::q4, M::B) == tm::Transition{M::q1, M::B, Move::Right});
  CHECK(m.transition(M::q1, M::X) == tm::Transition{M::q1, M::X, Move::Right});
}

TEST_CASE("alphabets, start/halt states and tape sizes") {
  const auto& p = machines::parentheses_machine();
  CHECK(p.num_tape_symbols() == 5);
  CHECK(p.blank() == P::B);
  CHECK(p.embed(P::LP) == P::L);
  CHECK(p.embed(P::RP) == P::R);
  CHECK(p.start() == P::q0);
  CHECK(p.accept() == P::q_acc);
  CHECK(p.reject() == P::q_rej);
  for (std::size_t n : {0u, 1u, 7u, 14u}) CHECK(p.tape_size(n) == 2 * n + 1);

  const auto& m = machines::sipser_m2_machine();
  CHECK(m.num_tape_symbols() == 3);
  CHECK(m.embed(M::Zero) == M::Z);
  CHECK(m.start() == M::q0);
  for (std::size_t n : {0u, 1u, 2048u}) CHECK(m.tape_size(n) == n + 1);
}

TEST_CASE("q0 visits follow the per-parenthesis cost 2(n+s-k)+1") {
  // Handling position k with s stack symbols on the tape walks to square n+s and back.
  const std::string words[] = {"(())()", "((", "()()()", "(((())))", "(()(()))"};
  for (const auto& w : words) {
    struct Q0 : tm::RunObserver {
      std::vector<std::uint64_t> steps;
      void on_configuration(const tm::Configuration& c) override {
        if (c.state == P::q0) steps.push_back(c.steps);
      }
    } obs;
    tm::run(machines::parentheses_machine(), pw(w), 100000, &obs);

    std::vector<std::uint64_t> expect{0};
    const std::int64_t n = static_cast<std::int64_t>(w.size());
    std::int64_t s = 0;
    for (std::int64_t k = 0; k < n; ++k) {
      if (w[k] == ')' && s == 0) break;
      expect.push_back(expect.back() + static_cast<std::uint64_t>(2 * (n + s - k) + 1));
      s += w[k] == '(' ? 1 : -1;
    }
    CAPTURE(w);
    CHECK(obs.steps == expect);
  }
}

TEST_CASE("final head positions") {
  const auto& p = machines::parentheses_machine();
  struct Case {
    const char* w;
    std::size_t head;
  } cases[] = {{"", 1}, {"()", 3}, {"((", 3}, {")", 1}, {"())", 3}, {"(()", 4}};
  for (auto c : cases) {
    auto r = tm::run(p, pw(c.w), 100000);
    CAPTURE(c.w);
    CHECK(r.final_config.head == c.head);
  }
  for (std::size_t n = 0; n <= 40; ++n) {
    auto r = tm::run(machines::sipser_m2_machine(), machines::zeros(n), tm::default_fuel(n));
    CHECK(r.final_config.head == n + 1);
    CHECK((r.decision == tm::Decision::Accept) == oracles::is_power_of_2(n));
  }
}

TEST_CASE("a run of left parentheses writes a stack symbol at square 2n-1") {
  for (std::size_t n = 1; n <= 12; ++n) {
    auto r = tm::run(machines::parentheses_machine(), tm::Word(n, P::LP), tm::default_fuel(n));
    CHECK(r.decision == tm::Decision::Reject);
    // the final q0 visit reads square n, one past the input
    CHECK(r.max_head == std::max(2 * n - 1, n + 1));
    CHECK(r.final_config.tape[2 * n - 1] == P::S);
    CHECK(r.final_config.tape[2 * n] == P::B);
  }
}
