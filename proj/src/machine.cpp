// Copyright (c) 2026 xsim contributors
// SPDX-License-Identifier: Apache-2.0

#include "xsim/machine.hpp"

#include <array>
#include <cstdlib>
#include <fstream>

#include <json.hpp>

#include "xsim/errors.hpp"

namespace xsim {

namespace {

DeviceSpec startkit_spec() {
  DeviceSpec spec;
  spec.name = "startkit";
  spec.core_count = 8;
  spec.chanend_count = 32;
  spec.timer_count = 10;
  spec.memory_bytes = 65536;
  spec.core_clock_hz = 500'000'000;
  spec.port_clock_hz = 100'000'000;
  spec.port_widths = {
      {"led32", 20},   // 3x3 matrix lives in bits 0-2 and 7-12
      {"led_d1", 1},   // the two auxiliary LEDs
      {"led_d2", 1},
      {"servo", 1},
      {"button", 1},
  };
  return spec;
}

constexpr std::array<int, 6> kValidPortWidths = {1, 4, 8, 16, 20, 32};

}  // namespace

void check_spec(const DeviceSpec& spec) {
  if (spec.core_count <= 0 || spec.chanend_count <= 0 || spec.timer_count <= 0 ||
      spec.memory_bytes <= 0 || spec.core_clock_hz <= 0 || spec.port_clock_hz <= 0) {
    throw DomainError("device spec '" + spec.name + "' has a non-positive count");
  }
  for (const auto& [port, width] : spec.port_widths) {
    bool ok = false;
    for (int w : kValidPortWidths) ok = ok || w == width;
    if (!ok) {
      throw DomainError("port '" + port + "' has unsupported width " +
                        std::to_string(width));
    }
  }
}

DeviceSpec load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UnknownProfile("cannot open device profile: " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("device profile: ") + e.what());
  }
  DeviceSpec spec;
  spec.name = j.value("name", path);
  spec.core_count = j.at("core_count").get<int>();
  spec.chanend_count = j.at("chanend_count").get<int>();
  spec.timer_count = j.at("timer_count").get<int>();
  spec.memory_bytes = j.at("memory_bytes").get<std::int64_t>();
  spec.core_clock_hz = j.at("core_clock_hz").get<std::int64_t>();
  spec.port_clock_hz = j.at("port_clock_hz").get<std::int64_t>();
  if (j.contains("port_widths")) {
    for (const auto& [port, width] : j.at("port_widths").items()) {
      spec.port_widths[port] = width.get<int>();
    }
  }
  check_spec(spec);
  return spec;
}

DeviceSpec default_spec(const std::string& profile_name) {
  if (profile_name == "startkit") return startkit_spec();
  if (const char* dir = std::getenv("XSIM_SPEC_DIR")) {
    std::string path = std::string(dir) + "/" + profile_name + ".json";
    if (std::ifstream(path).good()) return load_spec_file(path);
  }
  throw UnknownProfile("unknown device profile: " + profile_name);
}

std::string format_pct(std::int64_t used, std::int64_t capacity) {
  if (capacity <= 0) throw DomainError("capacity must be positive");
  // Exact rational rounding, half-up, in hundredths of a percent.
  std::int64_t hundredths = (20000 * used + capacity) / (2 * capacity);
  std::string s = std::to_string(hundredths / 100);
  int frac = static_cast<int>(hundredths % 100);
  if (frac != 0) {
    s += '.';
    s += static_cast<char>('0' + frac / 10);
    if (frac % 10 != 0) s += static_cast<char>('0' + frac % 10);
  }
  return s;
}

std::vector<LedgerRow> ledger_percentages(const ResourceLedger& ledger) {
  const DeviceSpec& spec = ledger.spec;
  auto row = [](std::string name, std::int64_t used, std::int64_t cap) {
    LedgerRow r;
    r.resource = std::move(name);
    r.used = used;
    r.used_pct = format_pct(used, cap);
    r.free = cap - used;
    r.free_pct = format_pct(cap - used, cap);
    return r;
  };

  std::vector<LedgerRow> rows;
  rows.push_back(row("Chanends", ledger.chanends_used, spec.chanend_count));
  rows.push_back(row("Logical Cores", ledger.cores_used, spec.core_count));

  // Memory: stack and program rows, one combined free cell.
  std::int64_t mem_free =
      spec.memory_bytes - ledger.stack_bytes_used - ledger.program_bytes_used;
  LedgerRow stack;
  stack.resource = "Memory(Stack)";
  stack.used = ledger.stack_bytes_used;
  stack.used_pct = format_pct(ledger.stack_bytes_used, spec.memory_bytes);
  stack.free = mem_free;
  stack.free_pct = format_pct(mem_free, spec.memory_bytes);
  rows.push_back(stack);

  LedgerRow prog;
  prog.resource = "Memory(Program)";
  prog.used = ledger.program_bytes_used;
  prog.used_pct = format_pct(ledger.program_bytes_used, spec.memory_bytes);
  rows.push_back(prog);  // free cell stays empty

  rows.push_back(row("Timers", ledger.timers_used, spec.timer_count));
  return rows;
}

}  // namespace xsim
