#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "decider_lab/commands.hpp"

using namespace decider_lab;

namespace {

void add_machine(CLI::App* app, std::string& machine) {
  app->add_option("machine", machine, "paren or m2")->required()->check(CLI::IsMember({"paren", "m2"}));
}

void add_input(CLI::App* app, std::optional<std::string>& input, std::optional<std::uint64_t>& n,
               std::optional<std::uint64_t>& fuel) {
  app->add_option("input", input, "word over ( ) for paren, over 0 for m2");
  app->add_option("--n", n, "m2 only: run on 0^N");
  app->add_option("--fuel", fuel, "step limit (default 100*(n+2)^2, or DECIDER_LAB_FUEL)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Turing-machine decider lab: run, trace and verify two deciders"};
  app.require_subcommand(1);
  const char* fuel_env = std::getenv("DECIDER_LAB_FUEL");

  std::string machine;
  cli::RunArgs run_args;
  auto* run = app.add_subcommand("run", "run a machine and print its decision");
  add_machine(run, machine);
  add_input(run, run_args.input, run_args.n, run_args.fuel);

  cli::TraceArgs trace_args;
  std::string format = "text";
  auto* trace = app.add_subcommand("trace", "print every configuration of a run");
  add_machine(trace, machine);
  add_input(trace, trace_args.run.input, trace_args.run.n, trace_args.run.fuel);
  trace->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  trace->add_flag("--ghost", trace_args.ghost, "append ghost variables");
  trace->add_flag("--variant", trace_args.variant, "append the termination variant");

  cli::VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "check every input up to a length");
  add_machine(verify, machine);
  verify->add_option("--max-len", verify_args.max_len, "longest input (paren) / largest n (m2)")->required();
  verify->add_option("--checks", verify_args.checks, "comma list of invariants,variant,bounds,final,oracle,dead or all");
  verify->add_option("--sample", verify_args.samples, "extra m2 lengths beyond --max-len")->delimiter(',');
  verify->add_option("--mutate", verify_args.mutate, "replace a table entry: STATE,SYM:NEXT,WRITE,MOVE or STATE,SYM:dead");
  verify->add_option("--fuel", verify_args.fuel, "step limit per run");
  verify->add_option("--jobs", verify_args.jobs, "worker threads")->check(CLI::Range(1u, 256u));
  verify->add_option("--max-findings", verify_args.max_findings, "violations to list");

  cli::EquivArgs equiv_args;
  std::string inject_equiv;
  auto* equiv = app.add_subcommand("equiv-combinator", "compare the combinator machine with the table machine");
  equiv->add_option("--max-n", equiv_args.max_n, "check every n up to this")->required();
  equiv->add_option("--sample", equiv_args.samples, "extra n values")->delimiter(',');
  equiv->add_option("--inject", inject_equiv, "fault to inject: swap-accept-reject")
      ->check(CLI::IsMember({"swap-accept-reject"}));

  cli::LemmaArgs lemma_args;
  auto* lemmas = app.add_subcommand("lemmas", "brute-force the power-of-two lemmas and the accumulated invariant");
  lemmas->add_option("--max-n", lemma_args.max_n, "largest n (at least 2)")->required();
  lemmas->add_option("--paren-len", lemma_args.paren_len, "longest parentheses word for the accumulated check")
      ->check(CLI::Range(0, 20));
  lemmas->add_option("--inject", lemma_args.inject, "fault to inject: even-pred");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kBadInput;
  }

  // Keeps the exit-code contract total: anything unexpected is an engine error.
  try {
    const auto kind = cli::parse_machine(machine);
    if (*run) {
      run_args.machine = *kind;
      run_args.fuel_env = fuel_env;
      return cli::cmd_run(run_args, std::cout, std::cerr);
    }
    if (*trace) {
      trace_args.run.machine = *kind;
      trace_args.run.fuel_env = fuel_env;
      trace_args.format = format == "json" ? trace::Format::Json : trace::Format::Text;
      return cli::cmd_trace(trace_args, std::cout, std::cerr);
    }
    if (*verify) {
      verify_args.machine = *kind;
      verify_args.fuel_env = fuel_env;
      return cli::cmd_verify(verify_args, std::cout, std::cerr);
    }
    if (*equiv) {
      equiv_args.swap_accept_reject = inject_equiv == "swap-accept-reject";
      return cli::cmd_equiv_combinator(equiv_args, std::cout, std::cerr);
    }
    return cli::cmd_lemmas(lemma_args, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return cli::kEngineError;
  }
}
