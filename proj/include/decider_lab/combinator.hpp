// Labelled machines built from primitives with Seq / Switch / While / Return / Relabel,
// run by a structural interpreter over the zipper tape.

#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "decider_lab/zipper.hpp"

namespace decider_lab::comb {

/// Halting label. Plain labels are unit, a name or a tape symbol; an optional
/// label is None or Some(plain). Read yields None / Some(symbol); While bodies
/// yield None (loop again) or Some(l) (stop with l).
class Label {
 public:
  enum class Kind : std::uint8_t { Unit, Name, Symbol };
  enum class Wrap : std::uint8_t { Plain, None, Some };

  static Label unit() { return Label(Wrap::Plain, Kind::Unit, {}, Sym::Zero); }
  static Label name(std::string n) { return Label(Wrap::Plain, Kind::Name, std::move(n), Sym::Zero); }
  static Label symbol(Sym s) { return Label(Wrap::Plain, Kind::Symbol, {}, s); }
  static Label none() { return Label(Wrap::None, Kind::Unit, {}, Sym::Zero); }
  /// Throws std::invalid_argument if l is already optional.
  static Label some(const Label& l);

  Wrap wrap() const { return wrap_; }
  bool is_option() const { return wrap_ != Wrap::Plain; }
  bool is_none() const { return wrap_ == Wrap::None; }
  /// Some(l) -> l. Throws std::logic_error otherwise.
  Label unwrap() const;

  std::string str() const;  // "ToOdd", "<0>", "<ToOdd>", "None", "()"

  auto operator<=>(const Label&) const = default;

 private:
  Label(Wrap w, Kind k, std::string n, Sym s) : wrap_(w), kind_(k), name_(std::move(n)), sym_(s) {}

  Wrap wrap_;
  Kind kind_;
  std::string name_;
  Sym sym_;
};

using LabelSet = std::set<Label>;

class MachineNode;
using Machine = std::shared_ptr<const MachineNode>;

enum class NodeKind : std::uint8_t { Read, Write, Move, Nop, Seq, Switch, While, Return, Relabel };

const char* to_string(NodeKind k);

/// Immutable node. Build through the factory functions below, which check the
/// label discipline (total Switch / Relabel maps, option-labelled While bodies).
class MachineNode {
 public:
  NodeKind kind;
  Sym symbol = Sym::Zero;  // Write
  Dir dir = Dir::N;        // Move
  Label label = Label::unit();  // Return
  std::vector<Machine> children;        // Seq: 2, Switch/While/Return/Relabel: body first
  std::map<Label, Machine> branches;    // Switch
  std::map<Label, Label> relabel;       // Relabel
  LabelSet labels;                      // labels this machine can halt with
  std::string name;                     // optional display name

  explicit MachineNode(NodeKind k) : kind(k) {}
};

Machine read_m();
Machine write_m(Sym s);
Machine move_m(Dir d);
Machine nop();
Machine seq(Machine first, Machine second);
Machine switch_m(Machine body, std::map<Label, Machine> branches);
Machine while_m(Machine body);
Machine return_m(Label l, Machine body);
Machine relabel(Machine body, std::map<Label, Label> mapping);
/// Same machine under a display name (no effect on behaviour or size).
Machine named(std::string name, Machine m);

/// Read |Gamma|+2, Write 2, Move 2, Nop 1; composites add up their parts and
/// While / Return / Relabel add nothing.
std::uint64_t state_count(const Machine& m);

struct ExecResult {
  Label label = Label::unit();
  ZipperTape tape;
  std::uint64_t actions = 0;          // primitive actions performed
  std::uint64_t overflow_writes = 0;  // writes that hit a non-Mid tape
};

/// Interprets m on t; each primitive action costs one unit of fuel.
/// Throws tm::FuelExhausted when the fuel runs out.
ExecResult exec(const Machine& m, ZipperTape t, std::uint64_t fuel);

}  // namespace decider_lab::comb
