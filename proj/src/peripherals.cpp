// Copyright (c) 2026 xsim contributors
// SPDX-License-Identifier: Apache-2.0

#include "xsim/peripherals.hpp"

#include <fstream>
#include <sstream>

#include "xsim/errors.hpp"

namespace xsim {

LedMapping LedMapping::standard() {
  LedMapping m;
  // LEDs 1-3 on bits 0-2, LEDs 4-9 on bits 7-12.
  m.bit_of_led = {{1, 0}, {2, 1}, {3, 2},  {4, 7},  {5, 8},
                  {6, 9}, {7, 10}, {8, 11}, {9, 12}};
  return m;
}

std::uint32_t LedMapping::mask() const {
  std::uint32_t m = 0;
  for (const auto& [led, bit] : bit_of_led) m |= 1u << bit;
  return m;
}

namespace {

void check_mapping(const LedMapping& mapping) {
  std::uint32_t seen = 0;
  for (const auto& [led, bit] : mapping.bit_of_led) {
    if (led < 1 || led > 9)
      throw DomainError("led index out of range: " + std::to_string(led));
    if (bit < 0 || bit >= mapping.port_width)
      throw DomainError("led bit outside port width: " + std::to_string(bit));
    if (seen & (1u << bit))
      throw DomainError("duplicate led bit: " + std::to_string(bit));
    seen |= 1u << bit;
  }
  if (mapping.bit_of_led.size() != 9)
    throw DomainError("mapping must cover all nine leds");
}

}  // namespace

std::uint32_t encode_grid(const LedGrid& grid, const LedMapping& mapping) {
  check_mapping(mapping);
  std::uint32_t word = 0;
  for (int k = 1; k <= 9; ++k) {
    bool lit = grid.led(k);
    if (mapping.polarity == Polarity::active_low) lit = !lit;
    if (lit) word |= 1u << mapping.bit_of_led.at(k);
  }
  return word;
}

LedGrid decode_port_word(std::uint32_t word, const LedMapping& mapping) {
  check_mapping(mapping);
  LedGrid grid;
  for (int k = 1; k <= 9; ++k) {
    bool bit = (word >> mapping.bit_of_led.at(k)) & 1u;
    grid.set_led(k, mapping.polarity == Polarity::active_low ? !bit : bit);
  }
  return grid;
}

GlyphSet GlyphSet::builtin() {
  auto grid = [](std::array<int, 9> cells) {
    LedGrid g;
    for (int i = 0; i < 9; ++i) g.cells[i] = cells[i] != 0;
    return g;
  };
  GlyphSet set;
  set.glyphs['Y'] = grid({1, 0, 1, 0, 1, 0, 0, 1, 0});
  set.glyphs['O'] = grid({1, 1, 1, 1, 0, 1, 1, 1, 1});
  set.glyphs['U'] = grid({1, 0, 1, 1, 0, 1, 1, 1, 1});
  set.glyphs['K'] = grid({1, 0, 1, 1, 1, 0, 1, 0, 1});
  set.glyphs['+'] = grid({0, 1, 0, 1, 1, 1, 0, 1, 0});
  set.glyphs['X'] = grid({1, 0, 1, 0, 1, 0, 1, 0, 1});
  return set;
}

GlyphSet load_glyphs(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("glyph file: ") + e.what());
  }
  GlyphSet set;
  for (const auto& [key, cells] : j.items()) {
    if (key.size() != 1) throw ParseError("glyph key must be a single character");
    if (!cells.is_array() || cells.size() != 9)
      throw ParseError("glyph '" + key + "' must have 9 cells");
    LedGrid g;
    for (int i = 0; i < 9; ++i) g.cells[i] = cells[i].get<int>() != 0;
    set.glyphs[key[0]] = g;
  }
  return set;
}

GlyphSet load_glyphs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open glyph file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_glyphs(ss.str());
}

std::vector<LedGrid> glyph_frames(const std::string& text, const GlyphSet& glyphs) {
  std::vector<LedGrid> frames;
  for (char c : text) {
    auto it = glyphs.glyphs.find(c);
    if (it == glyphs.glyphs.end())
      throw UnknownGlyph(std::string("no glyph for character '") + c + "'");
    frames.push_back(it->second);
  }
  return frames;
}

std::string render_grid(const LedGrid& grid) {
  std::string out;
  for (int row = 0; row < 3; ++row) {
    for (int col = 0; col < 3; ++col) out += grid.at(row, col) ? '#' : '.';
    out += '\n';
  }
  return out;
}

std::vector<LedGrid> frames_from_trace(const std::vector<TraceEvent>& trace,
                                       const LedMapping& mapping) {
  std::vector<LedGrid> frames;
  bool have_last = false;
  std::uint32_t last = 0;
  for (const TraceEvent& e : trace) {
    if (e.kind != TraceKind::port_drive) continue;
    if (e.detail.value("port", std::string()) != mapping.port_name) continue;
    std::uint32_t word = e.detail.at("value").get<std::uint32_t>();
    std::uint32_t masked = word & mapping.mask();
    if (have_last && masked == last) continue;
    last = masked;
    have_last = true;
    frames.push_back(decode_port_word(word, mapping));
  }
  return frames;
}

PwmSummary analyze_pwm(const std::vector<TraceEvent>& trace,
                       const std::string& port, int bit) {
  // Bit value timeline from the drive events.
  std::vector<std::pair<std::int64_t, int>> levels;
  for (const TraceEvent& e : trace) {
    if (e.kind != TraceKind::port_drive) continue;
    if (e.detail.value("port", std::string()) != port) continue;
    std::uint32_t word = e.detail.at("value").get<std::uint32_t>();
    levels.emplace_back(e.t_ns, static_cast<int>((word >> bit) & 1u));
  }

  // The port resets to 0, so a first drive to 1 is itself a rising edge.
  PwmSummary summary;
  std::vector<std::int64_t> rising, falling;
  int last = 0;
  for (const auto& [t, level] : levels) {
    if (level != last) {
      summary.edge_times.push_back(t);
      if (level == 1) rising.push_back(t);
      else falling.push_back(t);
      last = level;
    }
  }
  if (summary.edge_times.size() < 3)
    throw InsufficientEdges("need at least 3 transitions on " + port + " bit " +
                            std::to_string(bit) + ", saw " +
                            std::to_string(summary.edge_times.size()));
  if (rising.size() < 2)
    throw InsufficientEdges("need at least 2 rising edges on " + port);

  std::int64_t gap_sum = 0;
  for (std::size_t i = 1; i < rising.size(); ++i) gap_sum += rising[i] - rising[i - 1];
  std::int64_t gaps = static_cast<std::int64_t>(rising.size()) - 1;
  summary.period_ns = (gap_sum + gaps / 2) / gaps;

  // Mean high duration over complete pulses (rise followed by fall).
  std::int64_t width_sum = 0, pulses = 0;
  std::size_t fi = 0;
  for (std::int64_t r : rising) {
    while (fi < falling.size() && falling[fi] <= r) ++fi;
    if (fi < falling.size()) {
      width_sum += falling[fi] - r;
      ++pulses;
      ++fi;
    }
  }
  if (pulses > 0) summary.pulse_width_ns = (width_sum + pulses / 2) / pulses;
  return summary;
}

}  // namespace xsim
