// Copyright (c) 2026 xsim contributors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "xsim/errors.hpp"
#include "xsim/program.hpp"

using namespace xsim;

namespace {

Program parse(const std::string& text) { return parse_program(text); }

const char* kFourWayPar = R"({
  "name": "four_tasks",
  "channels": [],
  "tasks": {
    "task1": [{"op": "compute", "instructions": 10}],
    "task2": [{"op": "compute", "instructions": 10}],
    "task3": [{"op": "compute", "instructions": 10}],
    "task4": [{"op": "compute", "instructions": 10}]
  },
  "main": [{"op": "par", "branches": ["task1", "task2", "task3", "task4"]}]
})";

}  // namespace

TEST_CASE("four-way par parses with 4 branches") {
  Program p = parse(kFourWayPar);
  REQUIRE(p.main.statements.size() == 1);
  const auto& par = std::get<Par>(p.main.statements[0].node);
  REQUIRE(par.branches.size() == 4);
  CHECK(par.branches[0].name == "task1");
  CHECK(par.branches[3].name == "task4");
}

TEST_CASE("empty program parses") {
  Program p = parse(R"({"name":"empty","main":[]})");
  CHECK(p.main.statements.empty());
  CHECK(p.main.name == "main");
}

TEST_CASE("undeclared channel rejected") {
  CHECK_THROWS_AS(
      parse(R"({"main":[{"op":"chan_out","channel":"c","value":1}]})"),
      ParseError);
}

TEST_CASE("malformed json carries line/column") {
  try {
    parse("{\n  \"main\": [,]\n}");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
}

TEST_CASE("duplicate channel rejected") {
  CHECK_THROWS_AS(parse(R"({"channels":["c","c"],"main":[]})"), DuplicateName);
}

TEST_CASE("duplicate task name rejected") {
  CHECK_THROWS_AS(parse(R"({
    "tasks": {"t": [{"op":"compute","instructions":1}]},
    "main": [{"op":"par","branches":["t","t"]}]})"),
                  DuplicateName);
}

TEST_CASE("unknown op rejected") {
  CHECK_THROWS_AS(parse(R"({"main":[{"op":"frobnicate"}]})"), UnknownConstruct);
}

TEST_CASE("negative counts rejected") {
  CHECK_THROWS_AS(parse(R"({"main":[{"op":"compute","instructions":-1}]})"),
                  ParseError);
  CHECK_THROWS_AS(parse(R"({"main":[{"op":"repeat","count":-2,"body":[]}]})"),
                  ParseError);
  CHECK_THROWS_AS(
      parse(R"({"main":[{"op":"port_out_at","port":"p","at":-1,"value":0}]})"),
      ParseError);
}

TEST_CASE("empty select and empty par rejected") {
  CHECK_THROWS_AS(parse(R"({"main":[{"op":"select","cases":[]}]})"), ParseError);
  CHECK_THROWS_AS(parse(R"({"main":[{"op":"par","branches":[]}]})"), ParseError);
}

namespace {

// Random valid program generator for the round-trip property.
Program random_program(std::mt19937& rng) {
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> pick(0, 5);
  std::string text = R"({
    "name": "rt",
    "channels": ["c1", "c2"],
    "stacks": {"main": 16},
    "main": [)";
  int n = 1 + static_cast<int>(rng() % 4);
  for (int i = 0; i < n; ++i) {
    if (i) text += ",";
    switch (pick(rng)) {
      case 0: text += R"({"op":"compute","instructions":7})"; break;
      case 1: text += R"({"op":"chan_out","channel":"c1","value":42})"; break;
      case 2: text += R"({"op":"chan_in","channel":"c2","bind":"x"})"; break;
      case 3: text += R"({"op":"port_out","port":"led32","value":3})"; break;
      case 4: text += R"({"op":"repeat","count":3,"body":[{"op":"compute","instructions":1}]})"; break;
      default:
        text += R"({"op":"select","cases":[
          {"event":{"type":"timer_at","timer":"t","at":50},
           "body":[{"op":"compute","instructions":2}]},
          {"event":{"type":"chan_readable","channel":"c1"},
           "body":[{"op":"chan_in","channel":"c1","bind":"v"}]}]})";
    }
  }
  text += "]}";
  return parse_program(text);
}

}  // namespace

TEST_CASE("parse/serialize round trip") {
  std::mt19937 rng(7);
  for (int i = 0; i < 50; ++i) {
    Program p = random_program(rng);
    Program q = parse_program(serialize_program(p));
    CHECK(p == q);
  }
  // also the bundled-style program with par
  Program p = parse(kFourWayPar);
  CHECK(parse_program(serialize_program(p)) == p);
}

// ---------------------------------------------------------------- validate

TEST_CASE("nine parallel branches exhaust the cores") {
  std::string text = R"({"main":[{"op":"par","branches":[)";
  for (int i = 0; i < 9; ++i) {
    if (i) text += ",";
    text += R"([{"op":"compute","instructions":1}])";
  }
  text += "]}]}";
  Program p = parse(text);
  CHECK_THROWS_AS(validate(p, default_spec("startkit")), CoreExhausted);
}

TEST_CASE("eight parallel branches fit") {
  std::string text = R"({"main":[{"op":"par","branches":[)";
  for (int i = 0; i < 8; ++i) {
    if (i) text += ",";
    text += R"([{"op":"compute","instructions":1}])";
  }
  text += "]}]}";
  Program p = parse(text);
  ResourceLedger ledger = validate(p, default_spec("startkit"));
  CHECK(ledger.cores_used == 8);
}

TEST_CASE("nested par demand is a sum of branch peaks") {
  // par(a, par-inside-b of 2) -> 3 cores
  Program p = parse(R"({"main":[{"op":"par","branches":[
    [{"op":"compute","instructions":1}],
    [{"op":"par","branches":[
       [{"op":"compute","instructions":1}],
       [{"op":"compute","instructions":1}]]}]
  ]}]})");
  CHECK(validate(p, default_spec("startkit")).cores_used == 3);
}

TEST_CASE("sequential pars do not add up") {
  Program p = parse(R"({"main":[
    {"op":"par","branches":[[{"op":"compute","instructions":1}],
                            [{"op":"compute","instructions":1}]]},
    {"op":"par","branches":[[{"op":"compute","instructions":1}],
                            [{"op":"compute","instructions":1}]]}
  ]})");
  CHECK(validate(p, default_spec("startkit")).cores_used == 2);
}

TEST_CASE("chanend and timer exhaustion") {
  Program p = parse(R"({"channels":[],"chanends":33,"main":[]})");
  CHECK_THROWS_AS(validate(p, default_spec("startkit")), ChanendExhausted);

  std::string text = R"({"main":[)";
  for (int i = 0; i < 11; ++i) {
    if (i) text += ",";
    text += R"({"op":"timer_wait","timer":"t)" + std::to_string(i) + R"(","at":1})";
  }
  text += "]}";
  CHECK_THROWS_AS(validate(parse(text), default_spec("startkit")), TimerExhausted);
}

TEST_CASE("memory exhaustion") {
  Program p = parse(R"({"stacks":{"main":60000},"program_bytes":6000,"main":[]})");
  CHECK_THROWS_AS(validate(p, default_spec("startkit")), MemoryExhausted);
}

TEST_CASE("chanend demand defaults to two per channel") {
  Program p = parse(R"({"channels":["a","b"],"main":[]})");
  CHECK(validate(p, default_spec("startkit")).chanends_used == 4);
}

TEST_CASE("program bytes default to four per statement") {
  Program p = parse(R"({"main":[
    {"op":"compute","instructions":5},
    {"op":"repeat","count":2,"body":[{"op":"compute","instructions":1}]}
  ]})");
  // compute + repeat + inner compute = 3 nodes
  CHECK(validate(p, default_spec("startkit")).program_bytes_used == 12);
}

TEST_CASE("validate is independent of par branch order") {
  Program a = parse(R"({"channels":["c"],"stacks":{"x":100,"y":40},"tasks":{
      "x":[{"op":"compute","instructions":3}],
      "y":[{"op":"chan_out","channel":"c","value":1},
           {"op":"compute","instructions":1}]},
    "main":[{"op":"par","branches":["x","y"]}]})");
  Program b = parse(R"({"channels":["c"],"stacks":{"x":100,"y":40},"tasks":{
      "x":[{"op":"compute","instructions":3}],
      "y":[{"op":"chan_out","channel":"c","value":1},
           {"op":"compute","instructions":1}]},
    "main":[{"op":"par","branches":["y","x"]}]})");
  DeviceSpec spec = default_spec("startkit");
  ResourceLedger la = validate(a, spec);
  ResourceLedger lb = validate(b, spec);
  CHECK(la.cores_used == lb.cores_used);
  CHECK(la.stack_bytes_used == lb.stack_bytes_used);
  CHECK(la.stack_bytes_used == 140);
  CHECK(la.chanends_used == lb.chanends_used);
}

TEST_CASE("servo example matches its resource table") {
  Program p = parse_program_file(std::string(XSIM_DATA_DIR) + "/programs/servo.json");
  ResourceLedger ledger = validate(p, default_spec("startkit"));
  CHECK(ledger.cores_used == 1);
  CHECK(ledger.timers_used == 1);
  CHECK(ledger.chanends_used == 0);
}

TEST_CASE("multitask4 example matches its resource table") {
  Program p =
      parse_program_file(std::string(XSIM_DATA_DIR) + "/programs/multitask4.json");
  ResourceLedger ledger = validate(p, default_spec("startkit"));
  CHECK(ledger.cores_used == 4);
  CHECK(ledger.chanends_used == 3);
  CHECK(ledger.timers_used == 4);
  CHECK(ledger.stack_bytes_used == 604);
  CHECK(ledger.program_bytes_used == 4120);
}
