// Copyright (c) 2026 xsim contributors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "xsim/errors.hpp"
#include "xsim/profiler.hpp"
#include "xsim/program.hpp"
#include "xsim/sim.hpp"

using namespace xsim;

namespace {

TraceEvent ev(std::int64_t t, TraceKind kind, int core, nlohmann::json detail) {
  return TraceEvent{t, kind, core, std::move(detail)};
}

}  // namespace

TEST_CASE("duration formatting") {
  CHECK(format_duration(0) == "0ns");
  CHECK(format_duration(125) == "125ns");
  CHECK(format_duration(999) == "999ns");
  CHECK(format_duration(1000) == "1.000 micro sec");
  CHECK(format_duration(2548) == "2.548 micro sec");
  CHECK(format_duration(2500000) == "2500.000 micro sec");
  CHECK(format_duration(1002) == "1.002 micro sec");
}

TEST_CASE("profile of a constructed trace") {
  std::vector<TraceEvent> trace = {
      ev(0, TraceKind::task_start, 0, {{"task", "a"}}),
      ev(0, TraceKind::task_start, 1, {{"task", "b"}}),
      ev(100, TraceKind::instr_block, 0, {{"task", "a"}, {"instructions", 50}}),
      ev(300, TraceKind::instr_block, 0, {{"task", "a"}, {"instructions", 25}}),
      ev(300, TraceKind::task_end, 0,
         {{"task", "a"}, {"busy_ns", 300}, {"blocked_ns", 0}, {"instructions", 75}}),
      ev(500, TraceKind::task_end, 1,
         {{"task", "b"}, {"busy_ns", 120}, {"blocked_ns", 380}, {"instructions", 60}}),
  };
  auto profiles = profile(trace);
  REQUIRE(profiles.size() == 2);
  CHECK(profiles[0].task_name == "a");
  CHECK(profiles[0].instructions_retired == 75);
  CHECK(profiles[0].busy_ns == 300);
  CHECK(profiles[0].end_to_end_ns == 300);
  CHECK(profiles[1].task_name == "b");
  CHECK(profiles[1].blocked_ns == 380);
  CHECK(profiles[1].end_to_end_ns == 500);
}

TEST_CASE("profiles are ordered by first start") {
  std::vector<TraceEvent> trace = {
      ev(50, TraceKind::task_start, 1, {{"task", "late"}}),
      ev(0, TraceKind::task_start, 0, {{"task", "early"}}),
      ev(60, TraceKind::task_end, 1,
         {{"task", "late"}, {"busy_ns", 10}, {"blocked_ns", 0}}),
      ev(70, TraceKind::task_end, 0,
         {{"task", "early"}, {"busy_ns", 70}, {"blocked_ns", 0}}),
  };
  auto profiles = profile(trace);
  REQUIRE(profiles.size() == 2);
  CHECK(profiles[0].task_name == "early");
  CHECK(profiles[1].task_name == "late");
}

TEST_CASE("a deadlocked task is measured up to the deadlock") {
  std::vector<TraceEvent> trace = {
      ev(0, TraceKind::task_start, 0, {{"task", "stuck"}}),
      ev(400, TraceKind::deadlock, -1, {{"blocked", {"stuck: chan c (recv)"}}}),
  };
  auto profiles = profile(trace);
  REQUIRE(profiles.size() == 1);
  CHECK(profiles[0].end_to_end_ns == 400);
}

TEST_CASE("an unterminated trace is an error") {
  std::vector<TraceEvent> trace = {
      ev(0, TraceKind::task_start, 0, {{"task", "lost"}}),
  };
  CHECK_THROWS_AS(profile(trace), IncompleteTrace);
}

TEST_CASE("empty trace yields no profiles") {
  CHECK(profile({}).empty());
}

TEST_CASE("profile of a real run conserves time") {
  Program p = parse_program_file(std::string(XSIM_DATA_DIR) +
                                 "/programs/multitask4.json");
  DeviceSpec spec = default_spec("startkit");
  RunResult r = simulate(p, spec);
  auto profiles = profile(r.trace);
  REQUIRE(profiles.size() == 5);  // main plus four workers
  CHECK(profiles[0].task_name == "main");
  for (const TaskProfile& tp : profiles) {
    CHECK(tp.busy_ns + tp.blocked_ns == tp.end_to_end_ns);
    CHECK(tp.end_to_end_ns >= 10);        // every task at least 10 ns
    CHECK(tp.end_to_end_ns <= 100'000);   // and under 100 micro sec
  }
}

TEST_CASE("text report layout") {
  std::vector<TaskProfile> profiles = {
      {"main", 75, 300, 0, 300},
      {"worker", 60, 120, 2428, 2548},
  };
  ResourceLedger ledger;
  ledger.spec = default_spec("startkit");
  ledger.chanends_used = 3;
  ledger.cores_used = 4;
  ledger.timers_used = 4;
  ledger.stack_bytes_used = 604;
  ledger.program_bytes_used = 4120;

  std::string report = render_reports(profiles, ledger);
  CHECK(report.find("== Task execution times ==") != std::string::npos);
  CHECK(report.find("Function Name") != std::string::npos);
  CHECK(report.find("300ns") != std::string::npos);
  CHECK(report.find("2.548 micro sec") != std::string::npos);
  CHECK(report.find("== Resource usage ==") != std::string::npos);
  CHECK(report.find("3(9.38%)") != std::string::npos);
  CHECK(report.find("29(90.63%)") != std::string::npos);
  CHECK(report.find("4(50%)") != std::string::npos);
  CHECK(report.find("604(0.92%)") != std::string::npos);
  CHECK(report.find("60812(92.79%)") != std::string::npos);
  CHECK(report.find("4120(6.29%)") != std::string::npos);
  CHECK(report.find("== Platform ==") != std::string::npos);
  CHECK(report.find("8 logical cores") != std::string::npos);
}

TEST_CASE("zero usage renders as a bare percentage") {
  ResourceLedger ledger;
  ledger.spec = default_spec("startkit");
  std::string report = render_reports({}, ledger);
  CHECK(report.find("0%") != std::string::npos);
  CHECK(report.find("100%") != std::string::npos);
  CHECK(report.find("0(0%)") == std::string::npos);
}

TEST_CASE("rendering is byte-stable") {
  Program p = parse_program_file(std::string(XSIM_DATA_DIR) +
                                 "/programs/multitask4.json");
  DeviceSpec spec = default_spec("startkit");
  ResourceLedger ledger = validate(p, spec);
  RunResult r = simulate(p, spec);
  auto profiles = profile(r.trace);
  std::string a = render_reports(profiles, ledger);
  std::string b = render_reports(profile(simulate(p, spec).trace),
                                 validate(p, spec));
  CHECK(a == b);
  CHECK(render_reports_json(profiles, ledger) ==
        render_reports_json(profiles, ledger));
}

TEST_CASE("json report carries the same numbers") {
  std::vector<TaskProfile> profiles = {{"main", 10, 20, 0, 20}};
  ResourceLedger ledger;
  ledger.spec = default_spec("startkit");
  ledger.cores_used = 1;
  nlohmann::json j = nlohmann::json::parse(render_reports_json(profiles, ledger));
  CHECK(j.at("tasks").size() == 1);
  CHECK(j.at("tasks")[0].at("task_name") == "main");
  CHECK(j.at("tasks")[0].at("end_to_end_ns") == 20);
  bool found = false;
  for (const auto& r : j.at("resources")) {
    if (r.at("resource") == "Logical Cores") {
      CHECK(r.at("used") == 1);
      CHECK(r.at("used_pct") == "12.5");
      found = true;
    }
  }
  CHECK(found);
  CHECK(j.at("platform").at("cores") == 8);
}
