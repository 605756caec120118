// Copyright (c) 2026 xsim contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "xsim/machine.hpp"
#include "xsim/program.hpp"
#include "xsim/trace.hpp"

namespace xsim {

// External port input applied at a fixed time.
struct Stimulus {
  std::int64_t at_ns = 0;
  std::string port;
  std::uint32_t value = 0;
};

std::vector<Stimulus> load_stimulus_file(const std::string& path);
std::vector<Stimulus> parse_stimulus(const std::string& text);

enum class RunOutcome { completed, deadlock, until_reached };

struct RunResult {
  RunOutcome outcome = RunOutcome::completed;
  std::int64_t end_ns = 0;              // simulation time when run stopped
  std::vector<TraceEvent> trace;
  std::vector<std::string> blocked;     // on deadlock: task -> resource notes
};

// Read-only snapshot of the kernel state.
struct SimState {
  std::int64_t now_ns = 0;
  std::vector<std::string> cores;  // "idle" | "running <task>" | "blocked <task> <why>"
  std::map<std::string, std::uint32_t> port_values;
  std::map<std::string, std::int64_t> port_counters;
  std::map<std::string, std::int64_t> timer_values;
  std::map<std::string, std::string> pending_rendezvous;
  int rr_cursor = 0;
};

// Deterministic discrete-event execution of one validated program.
//
// Timing model: the hardware scheduler grants issue slots round-robin over
// runnable cores only, one instruction per 2 ns core cycle in aggregate.
// Scheduling proceeds in rounds: the runnable set R is snapshotted, the
// round spans 2*|R| ns, and every core in R retires exactly one
// instruction at the round boundary. Blocked cores consume no slots.
// Timed port drives happen at their exact port tick regardless of rounds.
class Simulator {
public:
  // Validates the program against the spec and places the main task on
  // core 0 at time 0. Throws UnknownPort for ports the device lacks.
  Simulator(Program program, DeviceSpec spec);
  ~Simulator();

  Simulator(const Simulator&) = delete;
  Simulator& operator=(const Simulator&) = delete;

  void add_stimulus(const std::vector<Stimulus>& stimuli);

  // Runs to completion, deadlock, or until_ns (whichever first). May be
  // called repeatedly to continue a paused run; the returned trace covers
  // only the new interval.
  RunResult run(std::optional<std::int64_t> until_ns = std::nullopt);

  SimState state() const;
  const ResourceLedger& ledger() const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// One-shot convenience: load, run, return the result.
RunResult simulate(const Program& program, const DeviceSpec& spec,
                   const std::vector<Stimulus>& stimuli = {},
                   std::optional<std::int64_t> until_ns = std::nullopt);

}  // namespace xsim
