// Copyright (c) 2026 xsim contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace xsim {

enum class TraceKind {
  task_start,
  task_end,
  instr_block,
  chan_send,
  chan_recv,
  port_drive,
  select_taken,
  core_alloc,
  core_free,
  deadlock,
};

const char* to_string(TraceKind kind);

// One timestamped simulator event. Traces are sorted by t_ns with ties
// broken by (core, emission order); identical inputs produce byte-identical
// streams.
struct TraceEvent {
  std::int64_t t_ns = 0;
  TraceKind kind = TraceKind::task_start;
  int core = -1;  // -1 = external (stimulus)
  nlohmann::json detail;
};

// JSON-lines rendering, one event per line with fields t_ns, kind, core,
// detail.
std::string trace_to_jsonl(const std::vector<TraceEvent>& trace);

// CSV with the same columns; detail is a JSON string cell.
std::string trace_to_csv(const std::vector<TraceEvent>& trace);

std::vector<TraceEvent> trace_from_jsonl(const std::string& text);

}  // namespace xsim
