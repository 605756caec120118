// Copyright (c) 2026 xsim contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace xsim {

// Static description of one device. Immutable after construction; the
// built-in "startkit" profile models an 8-core tile at 500 MHz with
// 100 MHz I/O ports.
struct DeviceSpec {
  std::string name;
  int core_count = 0;
  int chanend_count = 0;
  int timer_count = 0;
  std::int64_t memory_bytes = 0;
  std::int64_t core_clock_hz = 0;
  std::int64_t port_clock_hz = 0;
  std::map<std::string, int> port_widths;

  // 2 ns at 500 MHz.
  std::int64_t core_cycle_ns() const { return 1'000'000'000 / core_clock_hz; }
  // 10 ns at 100 MHz.
  std::int64_t port_tick_ns() const { return 1'000'000'000 / port_clock_hz; }
};

// Returns the named built-in profile, or throws UnknownProfile. If the
// environment variable XSIM_SPEC_DIR is set, <dir>/<name>.json is tried
// before giving up.
DeviceSpec default_spec(const std::string& profile_name);

// Loads a profile from a JSON file (field names match DeviceSpec).
DeviceSpec load_spec_file(const std::string& path);

// Checks the DeviceSpec invariants; throws DomainError on violation.
void check_spec(const DeviceSpec& spec);

// Used-resource counts against one DeviceSpec. Produced by the static
// validator and checked against the kernel's runtime peaks.
struct ResourceLedger {
  int chanends_used = 0;
  int cores_used = 0;
  int timers_used = 0;
  std::int64_t stack_bytes_used = 0;
  std::int64_t program_bytes_used = 0;
  DeviceSpec spec;
};

struct LedgerRow {
  std::string resource;
  std::int64_t used = 0;
  std::string used_pct;   // e.g. "9.38"
  std::int64_t free = -1; // -1 = no free cell for this row
  std::string free_pct;
};

// Percentage of used/capacity, rounded half-up to two decimals with
// trailing zeros stripped: 3/32 -> "9.38", 4/8 -> "50", 1/8 -> "12.5".
std::string format_pct(std::int64_t used, std::int64_t capacity);

// One row per resource; memory reports stack and program separately with
// a single combined free cell on the stack row (the table shape the
// renderer prints).
std::vector<LedgerRow> ledger_percentages(const ResourceLedger& ledger);

}  // namespace xsim
