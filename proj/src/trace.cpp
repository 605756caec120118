// Copyright (c) 2026 xsim contributors
// SPDX-License-Identifier: Apache-2.0

#include "xsim/trace.hpp"

#include <sstream>

#include "xsim/errors.hpp"

namespace xsim {

const char* to_string(TraceKind kind) {
  switch (kind) {
    case TraceKind::task_start:   return "task_start";
    case TraceKind::task_end:     return "task_end";
    case TraceKind::instr_block:  return "instr_block";
    case TraceKind::chan_send:    return "chan_send";
    case TraceKind::chan_recv:    return "chan_recv";
    case TraceKind::port_drive:   return "port_drive";
    case TraceKind::select_taken: return "select_taken";
    case TraceKind::core_alloc:   return "core_alloc";
    case TraceKind::core_free:    return "core_free";
    case TraceKind::deadlock:     return "deadlock";
  }
  return "?";
}

namespace {

TraceKind kind_from_string(const std::string& s) {
  for (int k = 0; k <= static_cast<int>(TraceKind::deadlock); ++k) {
    if (s == to_string(static_cast<TraceKind>(k))) return static_cast<TraceKind>(k);
  }
  throw ParseError("unknown trace event kind: " + s);
}

}  // namespace

std::string trace_to_jsonl(const std::vector<TraceEvent>& trace) {
  std::string out;
  for (const TraceEvent& e : trace) {
    nlohmann::json j;
    j["t_ns"] = e.t_ns;
    j["kind"] = to_string(e.kind);
    j["core"] = e.core;
    j["detail"] = e.detail.is_null() ? nlohmann::json::object() : e.detail;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string trace_to_csv(const std::vector<TraceEvent>& trace) {
  std::string out = "t_ns,kind,core,detail\n";
  for (const TraceEvent& e : trace) {
    nlohmann::json detail = e.detail.is_null() ? nlohmann::json::object() : e.detail;
    std::string cell = detail.dump();
    std::string quoted = "\"";
    for (char c : cell) {
      if (c == '"') quoted += "\"\"";
      else quoted += c;
    }
    quoted += '"';
    out += std::to_string(e.t_ns) + "," + to_string(e.kind) + "," +
           std::to_string(e.core) + "," + quoted + "\n";
  }
  return out;
}

std::vector<TraceEvent> trace_from_jsonl(const std::string& text) {
  std::vector<TraceEvent> trace;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("trace line: ") + e.what());
    }
    TraceEvent e;
    e.t_ns = j.at("t_ns").get<std::int64_t>();
    e.kind = kind_from_string(j.at("kind").get<std::string>());
    e.core = j.at("core").get<int>();
    e.detail = j.value("detail", nlohmann::json::object());
    trace.push_back(std::move(e));
  }
  return trace;
}

}  // namespace xsim
