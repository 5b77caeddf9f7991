#include "decider_lab/trace.hpp"

#include <cstdio>

namespace decider_lab::trace {

std::string render_tape_with_head(const tm::MachineDef& m, const tm::Configuration& c) {
  std::string out;
  out.reserve(c.tape.size() + 2);
  for (std::size_t i = 0; i < c.tape.size(); ++i) {
    if (i == c.head) {
      out += '[';
      out += m.glyph(c.tape[i]);
      out += ']';
    } else {
      out += m.glyph(c.tape[i]);
    }
  }
  if (c.head >= c.tape.size()) out += "[]";
  return out;
}

std::string text_line(const tm::MachineDef& m, const tm::Configuration& c) {
  char prefix[64];
  std::snprintf(prefix, sizeof prefix, "%4llu %-6s p=%zu ", static_cast<unsigned long long>(c.steps),
                m.state_name(c.state).c_str(), c.head);
  return prefix + ("|" + render_tape_with_head(m, c) + "|");
}

TraceRecord make_record(const tm::MachineDef& m, const tm::Configuration& c) {
  return {c.steps, m.state_name(c.state), c.head, m.render_tape(c.tape), std::nullopt, std::nullopt};
}

std::string to_text(const tm::MachineDef& m, const tm::Configuration& c, const TraceRecord& r) {
  std::string line = text_line(m, c);
  if (r.ghost) {
    line += " ";
    for (const auto& [key, value] : r.ghost->items())
      line += " " + key + "=" + (value.is_string() ? value.get<std::string>() : value.is_null() ? "-" : value.dump());
  }
  if (r.variant) line += "  v=" + ghost::render(*r.variant);
  return line;
}

nlohmann::ordered_json to_json(const TraceRecord& r) {
  nlohmann::ordered_json j;
  j["step"] = r.step;
  j["state"] = r.state;
  j["head"] = r.head;
  j["tape"] = r.tape;
  if (r.ghost) j["ghost"] = *r.ghost;
  if (r.variant) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& comp : r.variant->components) arr.push_back(comp ? nlohmann::ordered_json(*comp) : nullptr);
    j["variant"] = arr;
  }
  return j;
}

void TraceWriter::on_configuration(const tm::Configuration& c) {
  auto r = make_record(m_, c);
  if (ghost_) r.ghost = ghost_();
  if (variant_) r.variant = variant_();
  if (format_ == Format::Text) {
    out_ << to_text(m_, c, r) << '\n';
  } else {
    out_ << to_json(r).dump() << '\n';
  }
}

}  // namespace decider_lab::trace
