#include "decider_lab/combinator.hpp"

#include <stdexcept>

#include "decider_lab/tm_core.hpp"

namespace decider_lab::comb {

Label Label::some(const Label& l) {
  if (l.is_option()) throw std::invalid_argument("Label::some: nested option label " + l.str());
  return Label(Wrap::Some, l.kind_, l.name_, l.sym_);
}

Label Label::unwrap() const {
  if (wrap_ != Wrap::Some) throw std::logic_error("Label::unwrap: not a Some label: " + str());
  return Label(Wrap::Plain, kind_, name_, sym_);
}

std::string Label::str() const {
  if (wrap_ == Wrap::None) return "None";
  std::string base;
  switch (kind_) {
    case Kind::Unit: base = "()"; break;
    case Kind::Name: base = name_; break;
    case Kind::Symbol: base = std::string(1, glyph(sym_)); break;
  }
  return wrap_ == Wrap::Some ? "<" + base + ">" : base;
}

const char* to_string(NodeKind k) {
  switch (k) {
    case NodeKind::Read: return "Read";
    case NodeKind::Write: return "Write";
    case NodeKind::Move: return "Move";
    case NodeKind::Nop: return "Nop";
    case NodeKind::Seq: return "Seq";
    case NodeKind::Switch: return "Switch";
    case NodeKind::While: return "While";
    case NodeKind::Return: return "Return";
    case NodeKind::Relabel: return "Relabel";
  }
  return "?";
}

namespace {

std::shared_ptr<MachineNode> make(NodeKind k) { return std::make_shared<MachineNode>(k); }

std::string render(const LabelSet& ls) {
  std::string out = "{";
  for (const auto& l : ls) out += (out.size() > 1 ? ", " : "") + l.str();
  return out + "}";
}

void require(const Machine& m, const char* who) {
  if (!m) throw std::invalid_argument(std::string(who) + ": null machine");
}

}  // namespace

Machine read_m() {
  auto m = make(NodeKind::Read);
  m->labels.insert(Label::none());
  for (Sym s : kAllSyms) m->labels.insert(Label::some(Label::symbol(s)));
  return m;
}

Machine write_m(Sym s) {
  auto m = make(NodeKind::Write);
  m->symbol = s;
  m->labels = {Label::unit()};
  return m;
}

Machine move_m(Dir d) {
  auto m = make(NodeKind::Move);
  m->dir = d;
  m->labels = {Label::unit()};
  return m;
}

Machine nop() {
  auto m = make(NodeKind::Nop);
  m->labels = {Label::unit()};
  return m;
}

Machine seq(Machine first, Machine second) {
  require(first, "seq");
  require(second, "seq");
  auto m = make(NodeKind::Seq);
  m->labels = second->labels;
  m->children = {std::move(first), std::move(second)};
  return m;
}

Machine switch_m(Machine body, std::map<Label, Machine> branches) {
  require(body, "switch_m");
  LabelSet keys;
  for (const auto& [l, b] : branches) {
    require(b, "switch_m");
    keys.insert(l);
  }
  if (keys != body->labels)
    throw std::invalid_argument("switch_m: branches " + render(keys) + " do not match body labels " +
                                render(body->labels));
  auto m = make(NodeKind::Switch);
  for (const auto& [l, b] : branches) m->labels.insert(b->labels.begin(), b->labels.end());
  m->children = {std::move(body)};
  m->branches = std::move(branches);
  return m;
}

Machine while_m(Machine body) {
  require(body, "while_m");
  auto m = make(NodeKind::While);
  for (const auto& l : body->labels) {
    if (!l.is_option()) throw std::invalid_argument("while_m: body label " + l.str() + " is not optional");
    if (!l.is_none()) m->labels.insert(l.unwrap());
  }
  m->children = {std::move(body)};
  return m;
}

Machine return_m(Label l, Machine body) {
  require(body, "return_m");
  auto m = make(NodeKind::Return);
  m->labels = {l};
  m->label = std::move(l);
  m->children = {std::move(body)};
  return m;
}

Machine relabel(Machine body, std::map<Label, Label> mapping) {
  require(body, "relabel");
  for (const auto& l : body->labels)
    if (!mapping.count(l)) throw std::invalid_argument("relabel: no image for label " + l.str());
  auto m = make(NodeKind::Relabel);
  for (const auto& l : body->labels) m->labels.insert(mapping.at(l));
  m->children = {std::move(body)};
  m->relabel = std::move(mapping);
  return m;
}

Machine named(std::string name, Machine m) {
  require(m, "named");
  auto copy = std::make_shared<MachineNode>(*m);
  copy->name = std::move(name);
  return copy;
}

std::uint64_t state_count(const Machine& m) {
  switch (m->kind) {
    case NodeKind::Read: return std::size(kAllSyms) + 2;
    case NodeKind::Write:
    case NodeKind::Move: return 2;
    case NodeKind::Nop: return 1;
    case NodeKind::Seq: return state_count(m->children[0]) + state_count(m->children[1]);
    case NodeKind::Switch: {
      auto total = state_count(m->children[0]);
      for (const auto& [l, b] : m->branches) total += state_count(b);
      return total;
    }
    case NodeKind::While:
    case NodeKind::Return:
    case NodeKind::Relabel: return state_count(m->children[0]);
  }
  throw std::logic_error("state_count: unknown node");
}

namespace {

struct Run {
  ZipperTape tape;
  std::uint64_t fuel;
  std::uint64_t actions = 0;
  std::uint64_t overflow_writes = 0;

  void spend() {
    if (actions == fuel) throw tm::FuelExhausted(fuel, "combinator fuel exhausted after " + std::to_string(fuel) + " actions");
    ++actions;
  }

  Label go(const MachineNode& m) {
    switch (m.kind) {
      case NodeKind::Read: {
        spend();
        const auto s = tape.read();
        return s ? Label::some(Label::symbol(*s)) : Label::none();
      }
      case NodeKind::Write:
        spend();
        overflow_writes += tape.write(m.symbol);
        return Label::unit();
      case NodeKind::Move:
        spend();
        tape.move(m.dir);
        return Label::unit();
      case NodeKind::Nop:
        spend();
        return Label::unit();
      case NodeKind::Seq:
        go(*m.children[0]);
        return go(*m.children[1]);
      case NodeKind::Switch: {
        const auto l = go(*m.children[0]);
        return go(*m.branches.at(l));
      }
      case NodeKind::While:
        for (;;) {
          const auto l = go(*m.children[0]);
          if (!l.is_none()) return l.unwrap();
        }
      case NodeKind::Return:
        go(*m.children[0]);
        return m.label;
      case NodeKind::Relabel:
        return m.relabel.at(go(*m.children[0]));
    }
    throw std::logic_error("exec: unknown node");
  }
};

}  // namespace

ExecResult exec(const Machine& m, ZipperTape t, std::uint64_t fuel) {
  if (fuel == 0) throw std::invalid_argument("exec: fuel must be positive");
  Run run{std::move(t), fuel};
  auto label = run.go(*m);
  return {std::move(label), std::move(run.tape), run.actions, run.overflow_writes};
}

}  // namespace decider_lab::comb
