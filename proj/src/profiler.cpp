// Copyright (c) 2026 xsim contributors
// SPDX-License-Identifier: Apache-2.0

#include "xsim/profiler.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <json.hpp>

#include "xsim/errors.hpp"

namespace xsim {

std::vector<TaskProfile> profile(const std::vector<TraceEvent>& trace) {
  struct Acc {
    std::int64_t first_start = -1;
    std::int64_t end = -1;
    std::int64_t instr = 0;
    std::int64_t busy = 0;
    std::int64_t blocked = 0;
  };
  std::map<std::string, Acc> accs;
  std::vector<std::string> order;
  std::int64_t deadlock_at = -1;

  for (const TraceEvent& e : trace) {
    if (e.kind == TraceKind::deadlock) {
      deadlock_at = e.t_ns;
      continue;
    }
    if (e.kind != TraceKind::task_start && e.kind != TraceKind::task_end &&
        e.kind != TraceKind::instr_block)
      continue;
    std::string task = e.detail.value("task", std::string());
    Acc& a = accs[task];
    switch (e.kind) {
      case TraceKind::task_start:
        if (a.first_start < 0) {
          a.first_start = e.t_ns;
          order.push_back(task);
        }
        break;
      case TraceKind::task_end:
        a.end = e.t_ns;
        a.busy = e.detail.value("busy_ns", std::int64_t{0});
        a.blocked = e.detail.value("blocked_ns", std::int64_t{0});
        break;
      case TraceKind::instr_block:
        a.instr += e.detail.value("instructions", std::int64_t{0});
        break;
      default:
        break;
    }
  }

  std::stable_sort(order.begin(), order.end(),
                   [&](const std::string& a, const std::string& b) {
                     return accs[a].first_start < accs[b].first_start;
                   });

  std::vector<TaskProfile> profiles;
  for (const std::string& task : order) {
    const Acc& a = accs[task];
    TaskProfile p;
    p.task_name = task;
    p.instructions_retired = a.instr;
    p.busy_ns = a.busy;
    p.blocked_ns = a.blocked;
    if (a.end >= 0) {
      p.end_to_end_ns = a.end - a.first_start;
    } else if (deadlock_at >= 0) {
      p.end_to_end_ns = deadlock_at - a.first_start;
    } else {
      throw IncompleteTrace("task '" + task + "' started but never ended");
    }
    profiles.push_back(std::move(p));
  }
  return profiles;
}

std::string format_duration(std::int64_t ns) {
  if (ns < 1000) return std::to_string(ns) + "ns";
  std::int64_t micro = ns / 1000;
  int frac = static_cast<int>(ns % 1000);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%lld.%03d micro sec",
                static_cast<long long>(micro), frac);
  return buf;
}

namespace {

std::string used_cell(const LedgerRow& row) {
  if (row.used == 0) return row.used_pct + "%";
  return std::to_string(row.used) + "(" + row.used_pct + "%)";
}

std::string free_cell(const LedgerRow& row) {
  if (row.free < 0) return "";
  if (row.used == 0) return row.free_pct + "%";
  return std::to_string(row.free) + "(" + row.free_pct + "%)";
}

void append_table(std::string& out,
                  const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (widths.size() <= i) widths.push_back(0);
      widths[i] = std::max(widths[i], row[i].size());
    }
  }
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      line += row[i];
      if (i + 1 < row.size())
        line += std::string(widths[i] - row[i].size() + 2, ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line;
    out += '\n';
  }
}

}  // namespace

std::string render_reports(const std::vector<TaskProfile>& profiles,
                           const ResourceLedger& ledger) {
  std::string out;

  out += "== Task execution times ==\n";
  std::vector<std::vector<std::string>> task_rows;
  task_rows.push_back({"Function Name", "Time"});
  for (const TaskProfile& p : profiles)
    task_rows.push_back({p.task_name, format_duration(p.end_to_end_ns)});
  append_table(out, task_rows);

  out += "\n== Resource usage ==\n";
  std::vector<std::vector<std::string>> res_rows;
  res_rows.push_back({"Name", "Used", "Free"});
  for (const LedgerRow& row : ledger_percentages(ledger))
    res_rows.push_back({row.resource, used_cell(row), free_cell(row)});
  append_table(out, res_rows);

  const DeviceSpec& spec = ledger.spec;
  out += "\n== Platform ==\n";
  out += spec.name + ": " + std::to_string(spec.core_count) + " logical cores, " +
         std::to_string(spec.chanend_count) + " channels, " +
         std::to_string(spec.memory_bytes) + " bytes memory, " +
         std::to_string(spec.timer_count) + " timers, core clock " +
         std::to_string(spec.core_clock_hz / 1'000'000) + " MHz, port clock " +
         std::to_string(spec.port_clock_hz / 1'000'000) + " MHz\n";
  return out;
}

std::string render_reports_json(const std::vector<TaskProfile>& profiles,
                                const ResourceLedger& ledger) {
  nlohmann::json j;
  j["tasks"] = nlohmann::json::array();
  for (const TaskProfile& p : profiles) {
    j["tasks"].push_back({{"task_name", p.task_name},
                          {"instructions_retired", p.instructions_retired},
                          {"busy_ns", p.busy_ns},
                          {"blocked_ns", p.blocked_ns},
                          {"end_to_end_ns", p.end_to_end_ns},
                          {"time", format_duration(p.end_to_end_ns)}});
  }
  j["resources"] = nlohmann::json::array();
  for (const LedgerRow& row : ledger_percentages(ledger)) {
    nlohmann::json r = {{"resource", row.resource},
                        {"used", row.used},
                        {"used_pct", row.used_pct}};
    if (row.free >= 0) {
      r["free"] = row.free;
      r["free_pct"] = row.free_pct;
    }
    j["resources"].push_back(std::move(r));
  }
  const DeviceSpec& spec = ledger.spec;
  j["platform"] = {{"name", spec.name},
                   {"cores", spec.core_count},
                   {"chanends", spec.chanend_count},
                   {"memory_bytes", spec.memory_bytes},
                   {"timers", spec.timer_count},
                   {"core_clock_hz", spec.core_clock_hz},
                   {"port_clock_hz", spec.port_clock_hz}};
  return j.dump(2) + "\n";
}

}  // namespace xsim
