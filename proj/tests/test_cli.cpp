#include <doctest.h>

#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "decider_lab/commands.hpp"
#include "decider_lab/trace.hpp"
#include "decider_lab/verify.hpp"

using namespace decider_lab;
using namespace decider_lab::cli;
using verify::MachineKind;

namespace {

struct Out {
  std::ostringstream out, err;
};

RunArgs paren(const char* w) {
  RunArgs a;
  a.machine = MachineKind::Paren;
  a.input = w;
  return a;
}

RunArgs m2n(std::uint64_t n) {
  RunArgs a;
  a.machine = MachineKind::M2;
  a.n = n;
  return a;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("fuel resolution order") {
  CHECK(resolve_fuel(7, "99", 3) == 7);
  CHECK(resolve_fuel(std::nullopt, "99", 3) == 99);
  CHECK(resolve_fuel(std::nullopt, nullptr, 3) == 2500);
  CHECK(resolve_fuel(std::nullopt, "", 3) == 2500);
  CHECK_THROWS_AS(resolve_fuel(0, nullptr, 3), std::invalid_argument);
  CHECK_THROWS_AS(resolve_fuel(std::nullopt, "12x", 3), std::invalid_argument);
  CHECK_THROWS_AS(resolve_fuel(std::nullopt, "0", 3), std::invalid_argument);
  CHECK_THROWS_AS(resolve_fuel(std::nullopt, "-4", 3), std::invalid_argument);
}

TEST_CASE("machine names") {
  CHECK(parse_machine("paren") == MachineKind::Paren);
  CHECK(parse_machine("m2") == MachineKind::M2);
  CHECK(parse_machine("m3") == std::nullopt);
}

TEST_CASE("run: decisions and exit codes") {
  {
    Out o;
    CHECK(cmd_run(paren("(())()"), o.out, o.err) == kOk);
    CHECK(lines(o.out.str()).at(0) == "accept");
    CHECK(o.out.str().find("steps: 59") != std::string::npos);
  }
  {
    Out o;
    CHECK(cmd_run(m2n(5), o.out, o.err) == kReject);
    CHECK(lines(o.out.str()).at(0) == "reject");
  }
  {
    Out o;
    CHECK(cmd_run(paren("(a)"), o.out, o.err) == kBadInput);
    CHECK(o.out.str().empty());
    CHECK_FALSE(o.err.str().empty());
  }
  {
    Out o;
    auto a = paren("(())()");
    a.fuel = 3;
    CHECK(cmd_run(a, o.out, o.err) == kEngineError);
  }
  {
    Out o;
    auto a = paren("()");
    a.fuel_env = "nope";
    CHECK(cmd_run(a, o.out, o.err) == kBadInput);
  }
  {
    Out o;
    auto a = m2n(4);
    a.input = "0000";
    CHECK(cmd_run(a, o.out, o.err) == kBadInput);
  }
  {
    Out o;
    RunArgs a;
    a.machine = MachineKind::M2;
    a.input = "0000";
    CHECK(cmd_run(a, o.out, o.err) == kOk);
  }
}

TEST_CASE("trace: text format") {
  Out o;
  TraceArgs a;
  a.run = paren("((");
  CHECK(cmd_trace(a, o.out, o.err) == kReject);
  auto ls = lines(o.out.str());
  REQUIRE(ls.size() >= 6);
  CHECK(ls[0] == "   0 q0     p=0 |[(](___|");
  CHECK(ls[1] == "   1 q1     p=1 |x[(]___|");
  CHECK(ls[5] == "   5 q0     p=1 |([(]$__|");
}

TEST_CASE("trace: head past the tape is drawn as an empty square") {
  Out o;
  TraceArgs a;
  a.run = paren("");
  cmd_trace(a, o.out, o.err);
  auto ls = lines(o.out.str());
  REQUIRE(ls.size() == 2);
  CHECK(ls[1] == "   1 q_acc  p=1 |_[]|");
}

TEST_CASE("trace: m2 on the empty word has two records") {
  Out o;
  TraceArgs a;
  a.run = m2n(0);
  a.format = trace::Format::Json;
  CHECK(cmd_trace(a, o.out, o.err) == kReject);
  auto ls = lines(o.out.str());
  REQUIRE(ls.size() == 2);
  auto first = nlohmann::json::parse(ls[0]);
  auto last = nlohmann::json::parse(ls[1]);
  CHECK(first["state"] == "q0");
  CHECK(last["state"] == "q_rej");
  CHECK(last["step"] == 1);
  CHECK(last["head"] == 1);
}

TEST_CASE("trace: json records carry ghost and variant") {
  Out o;
  TraceArgs a;
  a.run = paren("(())");
  a.format = trace::Format::Json;
  a.ghost = true;
  a.variant = true;
  CHECK(cmd_trace(a, o.out, o.err) == kOk);
  auto ls = lines(o.out.str());
  std::uint64_t step = 0;
  for (const auto& l : ls) {
    auto j = nlohmann::json::parse(l);
    CHECK(j["step"] == step++);
    CHECK(j["variant"].size() == 3);
    CHECK(j["ghost"].contains("k"));
    CHECK(j["tape"].get<std::string>().size() == 9);
  }
  auto last = nlohmann::json::parse(ls.back());
  CHECK(last["ghost"]["k"] == 4);
  CHECK(last["state"] == "q_acc");

  Out m;
  TraceArgs b;
  b.run = m2n(2);
  b.format = trace::Format::Json;
  b.ghost = true;
  b.variant = true;
  cmd_trace(b, m.out, m.err);
  auto ml = lines(m.out.str());
  auto second = nlohmann::json::parse(ml.at(1));
  CHECK(second["ghost"]["snap"] == "_0_");
  CHECK(second["variant"] == nlohmann::json::array({0, 2, 1, 2}));
  CHECK(nlohmann::json::parse(ml.at(0))["variant"][1].is_null());
}

TEST_CASE("trace output is byte-identical across runs") {
  TraceArgs a;
  a.run = paren("(()())(");
  a.ghost = true;
  a.variant = true;
  Out x, y;
  cmd_trace(a, x.out, x.err);
  cmd_trace(a, y.out, y.err);
  CHECK(x.out.str() == y.out.str());
}

TEST_CASE("verify: clean runs and a mutated table") {
  {
    Out o;
    VerifyArgs a;
    a.max_len = 8;
    CHECK(cmd_verify(a, o.out, o.err) == kOk);
    CHECK(o.out.str().find("runs: 511") != std::string::npos);
    CHECK(o.err.str().empty());
  }
  {
    Out o;
    VerifyArgs a;
    a.machine = MachineKind::M2;
    a.max_len = 100;
    a.samples = {256};
    a.jobs = 2;
    CHECK(cmd_verify(a, o.out, o.err) == kOk);
  }
  {
    Out o;
    VerifyArgs a;
    a.max_len = 6;
    a.mutate = "q2,x:q0,(,L";
    CHECK(cmd_verify(a, o.out, o.err) == kViolation);
    CHECK(o.err.str().find("violation:") != std::string::npos);
  }
  {
    Out o;
    VerifyArgs a;
    a.max_len = 4;
    a.checks = "invariants,bogus";
    CHECK(cmd_verify(a, o.out, o.err) == kBadInput);
  }
  {
    Out o;
    VerifyArgs a;
    a.max_len = 4;
    a.mutate = "q2,x";
    CHECK(cmd_verify(a, o.out, o.err) == kBadInput);
  }
}

TEST_CASE("verify: engine errors outside the enabled checks give exit 3") {
  Out o;
  VerifyArgs a;
  a.max_len = 4;
  a.mutate = "q1,(:dead";
  a.checks = "oracle";
  CHECK(cmd_verify(a, o.out, o.err) == kEngineError);
  a.checks = "dead";
  Out p;
  CHECK(cmd_verify(a, p.out, p.err) == kViolation);
}

TEST_CASE("verify: summaries are independent of the worker count") {
  verify::VerifyOptions o;
  o.max_len = 8;
  o.jobs = 1;
  auto one = verify::run_verify(o);
  o.jobs = 4;
  auto four = verify::run_verify(o);
  CHECK(verify::render_summary(o, one) == verify::render_summary(o, four));
  CHECK(one.accepted == 1 + 1 + 2 + 5 + 14);
}

TEST_CASE("word enumeration order") {
  auto ws = verify::paren_words(2);
  REQUIRE(ws.size() == 7);
  CHECK(ws[0].empty());
  CHECK(ws[1] == tm::Word{0});
  CHECK(ws[2] == tm::Word{1});
  CHECK(ws[3] == tm::Word{0, 0});
  CHECK(ws[6] == tm::Word{1, 1});
  CHECK(verify::paren_words(14).size() == 32767);
}

TEST_CASE("mutation syntax") {
  const auto& m = verify::machine_for(MachineKind::Paren);
  auto mu = verify::Mutation::parse(m, "q2,x:q0,(,L");
  CHECK(mu.replacement->move == tm::Move::Left);
  CHECK(mu.str(m) == "q2,x:q0,(,L");
  CHECK_FALSE(verify::Mutation::parse(m, "q0,x:dead").replacement);
  CHECK_THROWS_AS(verify::Mutation::parse(m, "q9,x:dead"), std::invalid_argument);
  CHECK_THROWS_AS(verify::Mutation::parse(m, "q0,x:q1,(,U"), std::invalid_argument);
}

TEST_CASE("equiv-combinator") {
  {
    Out o;
    EquivArgs a;
    a.max_n = 64;
    a.samples = {4096};
    CHECK(cmd_equiv_combinator(a, o.out, o.err) == kOk);
    CHECK(lines(o.out.str()).at(0) == "state counts: 10 11 22 10 11 8 20 44 56");
  }
  {
    Out o;
    EquivArgs a;
    CHECK(cmd_equiv_combinator(a, o.out, o.err) == kOk);
    CHECK(o.out.str().find("n=0: Reject") != std::string::npos);
  }
  {
    Out o;
    EquivArgs a;
    a.max_n = 8;
    a.swap_accept_reject = true;
    CHECK(cmd_equiv_combinator(a, o.out, o.err) == kViolation);
  }
}

TEST_CASE("lemmas") {
  {
    Out o;
    LemmaArgs a;
    a.max_n = 4096;
    CHECK(cmd_lemmas(a, o.out, o.err) == kOk);
  }
  {
    Out o;
    LemmaArgs a;
    a.max_n = 2;
    CHECK(cmd_lemmas(a, o.out, o.err) == kOk);
  }
  {
    Out o;
    LemmaArgs a;
    a.max_n = 1;
    CHECK(cmd_lemmas(a, o.out, o.err) == kBadInput);
  }
  {
    Out o;
    LemmaArgs a;
    a.max_n = 100;
    a.inject = "even-pred";
    CHECK(cmd_lemmas(a, o.out, o.err) == kViolation);
    CHECK(o.err.str().find("at n=4") != std::string::npos);
  }
  {
    Out o;
    LemmaArgs a;
    a.inject = "odd-pred";
    CHECK(cmd_lemmas(a, o.out, o.err) == kBadInput);
  }
}
