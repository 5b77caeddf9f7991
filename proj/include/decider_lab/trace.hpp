// Rendering of configurations as trace lines (text or line-delimited JSON).

#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <string>

#include <json.hpp>

#include "decider_lab/tm_core.hpp"
#include "decider_lab/variant.hpp"

namespace decider_lab::trace {

enum class Format { Text, Json };

/// Tape glyphs with the head square in brackets; a head past the end shows as a trailing "[]".
std::string render_tape_with_head(const tm::MachineDef& m, const tm::Configuration& c);

/// "<step:4> <state:-6> p=<head> |<tape>|"
std::string text_line(const tm::MachineDef& m, const tm::Configuration& c);

struct TraceRecord {
  std::uint64_t step = 0;
  std::string state;
  std::size_t head = 0;
  std::string tape;                         // plain glyphs, head not marked
  std::optional<nlohmann::ordered_json> ghost;  // flat object of ghost fields
  std::optional<ghost::VariantTuple> variant;
};

TraceRecord make_record(const tm::MachineDef& m, const tm::Configuration& c);

/// Text line followed by "  k=0 s=0 ... v=(2, 3, 0)" when extras are present.
std::string to_text(const tm::MachineDef& m, const tm::Configuration& c, const TraceRecord& r);
nlohmann::ordered_json to_json(const TraceRecord& r);

/// Writes one line per configuration. The extras are queried when each
/// configuration is announced, so attach this observer after any ghost harness.
class TraceWriter : public tm::RunObserver {
 public:
  TraceWriter(const tm::MachineDef& m, std::ostream& out, Format format) : m_(m), out_(out), format_(format) {}

  void set_ghost(std::function<nlohmann::ordered_json()> ghost) { ghost_ = std::move(ghost); }
  void set_variant(std::function<std::optional<ghost::VariantTuple>()> variant) { variant_ = std::move(variant); }

  void on_configuration(const tm::Configuration& c) override;

 private:
  const tm::MachineDef& m_;
  std::ostream& out_;
  Format format_;
  std::function<nlohmann::ordered_json()> ghost_;
  std::function<std::optional<ghost::VariantTuple>()> variant_;
};

}  // namespace decider_lab::trace
