#include "decider_lab/m2_combinators.hpp"

#include "decider_lab/machines.hpp"
#include "decider_lab/oracles.hpp"
#include "decider_lab/tm_core.hpp"

namespace decider_lab::comb {

namespace {

Label nm(const char* s) { return Label::name(s); }
Label some(const char* s) { return Label::some(Label::name(s)); }
Label on(Sym s) { return Label::some(Label::symbol(s)); }

Machine write_then_right(Sym s) { return seq(write_m(s), move_m(Dir::R)); }

// While (Switch Read [<0> => zero, <x> => cross, None => none]).
Machine scan_loop(Machine zero, Machine cross, Machine none) {
  return while_m(switch_m(read_m(), {{on(Sym::Zero), std::move(zero)},
                                     {on(Sym::Cross), std::move(cross)},
                                     {Label::none(), std::move(none)}}));
}

}  // namespace

Label accept_label() { return nm("Accept"); }
Label reject_label() { return nm("Reject"); }

std::array<std::pair<const char*, const Machine*>, 9> M2Combinators::all() const {
  return {{{"MEven", &even},
           {"MOdd", &odd},
           {"MEvenOdd", &even_odd},
           {"MRewind", &rewind},
           {"MOdd1", &odd1},
           {"MEven0", &even0},
           {"MEven0Odd1", &even0_odd1},
           {"MEven0Odd1EvenOdd", &even0_odd1_even_odd},
           {"MSipserM2", &sipser_m2}}};
}

M2Combinators build_m2_combinators(Fault fault) {
  M2Combinators c;

  c.even = named("MEven", scan_loop(return_m(some("ToOdd"), move_m(Dir::R)),
                                    return_m(Label::none(), move_m(Dir::R)),
                                    return_m(some("ToRewind"), move_m(Dir::L))));

  c.odd = named("MOdd", scan_loop(return_m(some("ToEven"), write_then_right(Sym::Cross)),
                                  return_m(Label::none(), move_m(Dir::R)),
                                  return_m(some("ToReject"), nop())));

  c.even_odd = named("MEvenOdd",
                     while_m(switch_m(c.even, {{nm("ToOdd"), relabel(c.odd, {{nm("ToEven"), Label::none()},
                                                                             {nm("ToReject"), some("ToReject")}})},
                                               {nm("ToRewind"), return_m(some("ToRewind"), nop())}})));

  c.rewind = named("MRewind", scan_loop(return_m(Label::none(), move_m(Dir::L)),
                                        return_m(Label::none(), move_m(Dir::L)),
                                        return_m(some("ToSipserM2Body"), move_m(Dir::R))));

  c.odd1 = named("MOdd1", scan_loop(return_m(some("ToEvenOdd"), write_then_right(Sym::Cross)),
                                    return_m(Label::none(), move_m(Dir::R)),
                                    return_m(some("ToAccept"), nop())));

  c.even0 = named("MEven0", switch_m(read_m(), {{on(Sym::Zero), return_m(nm("ToOdd1"), move_m(Dir::R))},
                                                {on(Sym::Cross), return_m(nm("ToReject"), nop())},
                                                {Label::none(), return_m(nm("ToReject"), nop())}}));

  // The ToReject branch yields the plain label so the Switch stays over one label type.
  c.even0_odd1 = named(
      "MEven0Odd1",
      switch_m(c.even0, {{nm("ToOdd1"), relabel(c.odd1, {{nm("ToEvenOdd"), nm("ToEvenOdd")}, {nm("ToAccept"), nm("ToAccept")}})},
                         {nm("ToReject"), return_m(nm("ToReject"), nop())}}));

  c.even0_odd1_even_odd = named(
      "MEven0Odd1EvenOdd",
      switch_m(c.even0_odd1,
               {{nm("ToEvenOdd"), relabel(c.even_odd, {{nm("ToRewind"), nm("ToRewind")}, {nm("ToReject"), nm("ToReject")}})},
                {nm("ToAccept"), return_m(nm("ToAccept"), nop())},
                {nm("ToReject"), return_m(nm("ToReject"), nop())}}));

  const bool swap = fault == Fault::SwapAcceptReject;
  c.sipser_m2 = named(
      "MSipserM2",
      while_m(switch_m(c.even0_odd1_even_odd,
                       {{nm("ToRewind"), return_m(Label::none(), c.rewind)},
                        {nm("ToAccept"), return_m(Label::some(swap ? reject_label() : accept_label()), nop())},
                        {nm("ToReject"), return_m(Label::some(swap ? accept_label() : reject_label()), nop())}})));
  return c;
}

const M2Combinators& m2_combinators() {
  static const M2Combinators c = build_m2_combinators();
  return c;
}

std::uint64_t default_comb_fuel(std::size_t n) {
  const std::uint64_t m = n + 2;
  return 100 * m * m;
}

RealizationResult realization_check(const Machine& m, std::size_t n, std::uint64_t fuel) {
  RealizationResult r;
  r.expected = oracles::is_power_of_2(n);
  try {
    const auto out = exec(m, encode_zeros(n), fuel);
    r.actions = out.actions;
    r.overflow_writes = out.overflow_writes;
    if (out.label != accept_label() && out.label != reject_label()) {
      r.error = "unexpected label " + out.label.str();
      return r;
    }
    r.accepted = out.label == accept_label();
  } catch (const tm::FuelExhausted& e) {
    r.error = e.what();
    return r;
  }
  const auto& table = machines::sipser_m2_machine();
  try {
    r.monolithic = tm::run(table, machines::zeros(n), tm::default_fuel(n)).decision == tm::Decision::Accept;
  } catch (const tm::EngineError& e) {
    r.error = std::string("table machine: ") + e.what();
    return r;
  }
  r.ok = r.accepted == r.expected && r.monolithic == r.accepted && r.overflow_writes == 0;
  if (!r.ok && r.overflow_writes != 0) r.error = "write on an overflow position";
  return r;
}

RealizationResult realization_check(std::size_t n) {
  return realization_check(m2_combinators().sipser_m2, n, default_comb_fuel(n));
}

}  // namespace decider_lab::comb
