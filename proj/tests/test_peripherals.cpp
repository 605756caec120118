// Copyright (c) 2026 xsim contributors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "xsim/errors.hpp"
#include "xsim/peripherals.hpp"

using namespace xsim;

namespace {

LedGrid grid_of(std::array<int, 9> cells) {
  LedGrid g;
  for (int i = 0; i < 9; ++i) g.cells[i] = cells[i] != 0;
  return g;
}

TraceEvent drive(std::int64_t t, const std::string& port, std::uint32_t value) {
  TraceEvent e;
  e.t_ns = t;
  e.kind = TraceKind::port_drive;
  e.core = 0;
  e.detail = {{"port", port}, {"value", value}};
  return e;
}

}  // namespace

TEST_CASE("encode: dark grid, full grid, single led") {
  LedMapping m = LedMapping::standard();
  CHECK(encode_grid(LedGrid{}, m) == 0x00000u);
  CHECK(encode_grid(grid_of({1, 1, 1, 1, 1, 1, 1, 1, 1}), m) == 0x1F87u);
  LedGrid g;
  g.set_led(5, true);  // center
  CHECK(encode_grid(g, m) == 0x00100u);
  CHECK(m.mask() == 0x1F87u);
}

TEST_CASE("decode inverts encode and ignores unmapped bits") {
  LedMapping m = LedMapping::standard();
  LedGrid g = grid_of({1, 0, 1, 0, 1, 0, 0, 1, 0});
  std::uint32_t word = encode_grid(g, m);
  CHECK(decode_port_word(word, m) == g);
  // noise on don't-care bits (3-6, 13+) leaves the grid unchanged
  CHECK(decode_port_word(word | 0x78u | 0xE000u, m) == g);
}

TEST_CASE("decode-encode identity and injectivity over all grids") {
  LedMapping m = LedMapping::standard();
  std::set<std::uint32_t> words;
  for (int bits = 0; bits < 512; ++bits) {
    LedGrid g;
    for (int k = 1; k <= 9; ++k) g.set_led(k, (bits >> (k - 1)) & 1);
    std::uint32_t word = encode_grid(g, m);
    CHECK(decode_port_word(word, m) == g);
    CHECK(!words.count(word));  // distinct grids -> distinct words
    words.insert(word);
    CHECK((word & ~m.mask()) == 0u);
  }
}

TEST_CASE("active-low polarity flips every mapped bit") {
  LedMapping m = LedMapping::standard();
  m.polarity = Polarity::active_low;
  CHECK(encode_grid(LedGrid{}, m) == 0x1F87u);
  CHECK(encode_grid(grid_of({1, 1, 1, 1, 1, 1, 1, 1, 1}), m) == 0x00000u);
  LedGrid g = grid_of({1, 0, 0, 0, 1, 0, 0, 0, 1});
  CHECK(decode_port_word(encode_grid(g, m), m) == g);
}

TEST_CASE("bad mappings rejected") {
  LedMapping m = LedMapping::standard();
  m.bit_of_led[3] = m.bit_of_led[4];  // duplicate bit
  CHECK_THROWS_AS(encode_grid(LedGrid{}, m), DomainError);
  m = LedMapping::standard();
  m.bit_of_led[9] = 25;  // outside the 20-bit port
  CHECK_THROWS_AS(encode_grid(LedGrid{}, m), DomainError);
  m = LedMapping::standard();
  m.bit_of_led.erase(7);
  CHECK_THROWS_AS(encode_grid(LedGrid{}, m), DomainError);
}

TEST_CASE("builtin glyphs and the bundled file agree") {
  GlyphSet builtin = GlyphSet::builtin();
  GlyphSet loaded =
      load_glyphs_file(std::string(XSIM_DATA_DIR) + "/glyphs/default.json");
  REQUIRE(builtin.glyphs.size() == 6);
  for (const auto& [c, g] : builtin.glyphs) {
    REQUIRE(loaded.glyphs.count(c));
    CHECK(loaded.glyphs.at(c) == g);
  }
}

TEST_CASE("glyph word values on the standard mapping") {
  LedMapping m = LedMapping::standard();
  GlyphSet glyphs = GlyphSet::builtin();
  CHECK(encode_grid(glyphs.glyphs.at('Y'), m) == 2309u);
  CHECK(encode_grid(glyphs.glyphs.at('O'), m) == 7815u);
  CHECK(encode_grid(glyphs.glyphs.at('U'), m) == 7813u);
  CHECK(encode_grid(glyphs.glyphs.at('K'), m) == 5509u);
  CHECK(encode_grid(glyphs.glyphs.at('+'), m) == 2946u);
  CHECK(encode_grid(glyphs.glyphs.at('X'), m) == 5381u);
}

TEST_CASE("glyph_frames") {
  GlyphSet glyphs = GlyphSet::builtin();
  CHECK(glyph_frames("", glyphs).empty());
  auto frames = glyph_frames("YOUK", glyphs);
  REQUIRE(frames.size() == 4);
  CHECK(frames[0] == glyphs.glyphs.at('Y'));
  CHECK(frames[3] == glyphs.glyphs.at('K'));
  CHECK_THROWS_AS(glyph_frames("Z", glyphs), UnknownGlyph);
  CHECK_THROWS_AS(glyph_frames("YOZK", glyphs), UnknownGlyph);
}

TEST_CASE("glyph file validation") {
  CHECK_THROWS_AS(load_glyphs("not json"), ParseError);
  CHECK_THROWS_AS(load_glyphs(R"({"AB":[1,1,1,1,1,1,1,1,1]})"), ParseError);
  CHECK_THROWS_AS(load_glyphs(R"({"A":[1,1,1]})"), ParseError);
}

TEST_CASE("render_grid") {
  GlyphSet glyphs = GlyphSet::builtin();
  CHECK(render_grid(glyphs.glyphs.at('Y')) == "#.#\n.#.\n.#.\n");
  CHECK(render_grid(glyphs.glyphs.at('O')) == "###\n#.#\n###\n");
  CHECK(render_grid(LedGrid{}) == "...\n...\n...\n");
}

TEST_CASE("frames_from_trace collapses duplicates and filters ports") {
  LedMapping m = LedMapping::standard();
  std::vector<TraceEvent> trace = {
      drive(0, "led32", 2309),   drive(10, "other", 7815),
      drive(20, "led32", 2309),  // duplicate frame
      drive(30, "led32", 2309 | 0x78),  // same after masking
      drive(40, "led32", 7815),  drive(50, "led32", 0)};
  auto frames = frames_from_trace(trace, m);
  GlyphSet glyphs = GlyphSet::builtin();
  REQUIRE(frames.size() == 3);
  CHECK(frames[0] == glyphs.glyphs.at('Y'));
  CHECK(frames[1] == glyphs.glyphs.at('O'));
  CHECK(frames[2] == LedGrid{});
}

TEST_CASE("pwm summary of a clean square wave") {
  std::vector<TraceEvent> trace;
  // 1 kHz-ish: rise every 1000 ns, high for 250 ns
  for (int i = 0; i < 4; ++i) {
    trace.push_back(drive(i * 1000, "servo", 1));
    trace.push_back(drive(i * 1000 + 250, "servo", 0));
  }
  PwmSummary s = analyze_pwm(trace, "servo", 0);
  CHECK(s.period_ns == 1000);
  CHECK(s.pulse_width_ns == 250);
  CHECK(s.edge_times.size() == 8);
}

TEST_CASE("pwm ignores redundant drives to the same level") {
  std::vector<TraceEvent> trace = {
      drive(0, "p", 1),   drive(100, "p", 1),  // no edge
      drive(500, "p", 0), drive(1000, "p", 1), drive(1500, "p", 0)};
  PwmSummary s = analyze_pwm(trace, "p", 0);
  CHECK(s.edge_times == std::vector<std::int64_t>{0, 500, 1000, 1500});
  CHECK(s.period_ns == 1000);
  CHECK(s.pulse_width_ns == 500);
}

TEST_CASE("pwm period is the rounded mean of uneven gaps") {
  std::vector<TraceEvent> trace = {drive(0, "p", 1),    drive(100, "p", 0),
                                   drive(990, "p", 1),  drive(1100, "p", 0),
                                   drive(2015, "p", 1), drive(2100, "p", 0)};
  PwmSummary s = analyze_pwm(trace, "p", 0);
  // gaps 990 and 1025 -> mean 1007.5 rounds to 1008
  CHECK(s.period_ns == 1008);
}

TEST_CASE("pwm needs enough edges") {
  std::vector<TraceEvent> none;
  CHECK_THROWS_AS(analyze_pwm(none, "p", 0), InsufficientEdges);
  std::vector<TraceEvent> one_pulse = {drive(0, "p", 1), drive(100, "p", 0)};
  CHECK_THROWS_AS(analyze_pwm(one_pulse, "p", 0), InsufficientEdges);
  std::vector<TraceEvent> constant = {drive(0, "p", 1), drive(100, "p", 1),
                                      drive(200, "p", 1)};
  CHECK_THROWS_AS(analyze_pwm(constant, "p", 0), InsufficientEdges);
}

TEST_CASE("pwm watches a single bit of a wide port") {
  std::vector<TraceEvent> trace = {drive(0, "led32", 0b100),
                                   drive(100, "led32", 0b001),
                                   drive(200, "led32", 0b101),
                                   drive(300, "led32", 0b000)};
  PwmSummary s = analyze_pwm(trace, "led32", 2);
  CHECK(s.edge_times == std::vector<std::int64_t>{0, 100, 200, 300});
  CHECK(s.period_ns == 200);
}
