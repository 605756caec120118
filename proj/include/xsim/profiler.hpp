// Copyright (c) 2026 xsim contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "xsim/machine.hpp"
#include "xsim/trace.hpp"

namespace xsim {

struct TaskProfile {
  std::string task_name;
  std::int64_t instructions_retired = 0;
  std::int64_t busy_ns = 0;
  std::int64_t blocked_ns = 0;
  std::int64_t end_to_end_ns = 0;
};

// Aggregates one profile per task, ordered by first start time. Throws
// IncompleteTrace when a task started but never ended and the run did not
// deadlock.
std::vector<TaskProfile> profile(const std::vector<TraceEvent>& trace);

// "125ns" below 1000 ns, else microseconds with 3 decimals
// ("2.548 micro sec").
std::string format_duration(std::int64_t ns);

// Text report: per-task times, the used/free resource table, and a
// platform summary line. Pure function of its inputs.
std::string render_reports(const std::vector<TaskProfile>& profiles,
                           const ResourceLedger& ledger);

// Machine-readable variant with the same fields.
std::string render_reports_json(const std::vector<TaskProfile>& profiles,
                                const ResourceLedger& ledger);

}  // namespace xsim
