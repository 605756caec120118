// Copyright (c) 2026 xsim contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "xsim/trace.hpp"

namespace xsim {

// 3x3 LED matrix, row-major. LED index k = 3*row + col + 1, k in 1..9.
struct LedGrid {
  std::array<bool, 9> cells{};

  bool& at(int row, int col) { return cells[3 * row + col]; }
  bool at(int row, int col) const { return cells[3 * row + col]; }
  bool led(int k) const { return cells[k - 1]; }
  void set_led(int k, bool on) { cells[k - 1] = on; }
  bool operator==(const LedGrid&) const = default;
};

enum class Polarity { active_high, active_low };

// How the nine matrix LEDs map onto bits of an output port. The default
// places LEDs 1-3 on bits 0-2 and LEDs 4-9 on bits 7-12 of the 20-bit
// "led32" port; all other bits are don't-care.
struct LedMapping {
  std::string port_name = "led32";
  int port_width = 20;
  std::map<int, int> bit_of_led;  // LED k in 1..9 -> bit index
  Polarity polarity = Polarity::active_high;

  static LedMapping standard();
  std::uint32_t mask() const;  // OR of all mapped bits
};

std::uint32_t encode_grid(const LedGrid& grid, const LedMapping& mapping);
LedGrid decode_port_word(std::uint32_t word, const LedMapping& mapping);

// Character glyphs for the matrix, loaded from a JSON map of single
// character -> 9-element 0/1 array (row-major).
struct GlyphSet {
  std::map<char, LedGrid> glyphs;
  static GlyphSet builtin();  // Y O U K + X
};

GlyphSet load_glyphs(const std::string& json_text);
GlyphSet load_glyphs_file(const std::string& path);

std::vector<LedGrid> glyph_frames(const std::string& text, const GlyphSet& glyphs);

// Plain-text 3x3 block ('#' lit, '.' dark), three lines, for golden files.
std::string render_grid(const LedGrid& grid);

// Extracts the frame sequence a trace drove onto the mapped port
// (consecutive duplicate words collapse into one frame).
std::vector<LedGrid> frames_from_trace(const std::vector<TraceEvent>& trace,
                                       const LedMapping& mapping);

struct PwmSummary {
  std::int64_t period_ns = 0;
  std::int64_t pulse_width_ns = 0;
  std::vector<std::int64_t> edge_times;
};

// Measures the waveform on one bit of a port from port_drive events.
// Needs at least 3 transitions and 2 rising edges; period is the mean gap
// between consecutive rising edges, pulse width the mean high duration.
PwmSummary analyze_pwm(const std::vector<TraceEvent>& trace,
                       const std::string& port, int bit);

}  // namespace xsim
