// Copyright (c) 2026 xsim contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "xsim/machine.hpp"

namespace xsim {

// A 32-bit word operand: either a literal or a variable bound earlier in
// the same task by a chan_in / port_in.
struct WordExpr {
  std::uint32_t literal = 0;
  std::string var;  // non-empty means variable reference
  bool is_var() const { return !var.empty(); }
  bool operator==(const WordExpr&) const = default;
};

struct Stmt;

struct TaskBody {
  std::string name;
  std::vector<Stmt> statements;
  bool operator==(const TaskBody&) const;
};

// Events a select can wait on.
struct ChanReadable {
  std::string channel;
  bool operator==(const ChanReadable&) const = default;
};
struct TimerAt {
  std::string timer;
  std::int64_t at_ref_ticks = 0;
  bool operator==(const TimerAt&) const = default;
};
struct PortChanged {
  std::string port;
  bool operator==(const PortChanged&) const = default;
};
using Event = std::variant<ChanReadable, TimerAt, PortChanged>;

struct Compute {
  std::int64_t instructions = 0;
  bool operator==(const Compute&) const = default;
};
struct ChanOut {
  std::string channel;
  WordExpr value;
  bool operator==(const ChanOut&) const = default;
};
struct ChanIn {
  std::string channel;
  std::string bind;
  bool operator==(const ChanIn&) const = default;
};
struct PortOut {
  std::string port;
  WordExpr value;
  bool operator==(const PortOut&) const = default;
};
struct PortOutAt {
  std::string port;
  std::int64_t at_port_ticks = 0;
  WordExpr value;
  bool operator==(const PortOutAt&) const = default;
};
struct PortIn {
  std::string port;
  std::string bind;
  bool operator==(const PortIn&) const = default;
};
struct TimerWaitUntil {
  std::string timer;
  std::int64_t at_ref_ticks = 0;
  bool operator==(const TimerWaitUntil&) const = default;
};
struct SelectCase {
  Event event;
  TaskBody body;
  bool operator==(const SelectCase&) const = default;
};
struct Select {
  std::vector<SelectCase> cases;
  bool operator==(const Select&) const = default;
};
struct Par {
  std::vector<TaskBody> branches;
  bool operator==(const Par&) const = default;
};
struct Repeat {
  std::int64_t count = 0;
  TaskBody body;
  bool operator==(const Repeat&) const = default;
};

struct Stmt {
  std::variant<Compute, ChanOut, ChanIn, PortOut, PortOutAt, PortIn,
               TimerWaitUntil, Select, Par, Repeat>
      node;
  bool operator==(const Stmt&) const = default;
};

inline bool TaskBody::operator==(const TaskBody& o) const {
  return name == o.name && statements == o.statements;
}

struct Program {
  std::string name;
  std::vector<std::string> channels;
  std::map<std::string, std::int64_t> declared_stack_bytes;
  std::optional<std::int64_t> declared_program_bytes;
  std::optional<int> declared_chanends;  // overrides channels.size() * 2
  std::optional<std::string> glyphs;     // glyph file reference
  TaskBody main;
  bool operator==(const Program&) const = default;
};

// Parses the JSON program format (see the bundled examples under data/).
// Named tasks from the top-level "tasks" map are inlined into par branches
// at parse time; unnamed branches get deterministic synthesized names.
Program parse_program(const std::string& text);
Program parse_program_file(const std::string& path);

// Canonical JSON serialization; parse_program(serialize_program(p)) == p.
std::string serialize_program(const Program& program);

// Static resource check (the compiler's core-allocation role): peak
// concurrent core demand, chanends (2 per channel unless overridden),
// distinct timers, stack at peak, program bytes (declared, else 4 per
// statement node). Throws CoreExhausted / ChanendExhausted /
// TimerExhausted / MemoryExhausted when demand exceeds the spec.
ResourceLedger validate(const Program& program, const DeviceSpec& spec);

}  // namespace xsim
