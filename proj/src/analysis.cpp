// Copyright (c) 2026 xsim contributors
// SPDX-License-Identifier: Apache-2.0

#include "xsim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "xsim/errors.hpp"

namespace xsim {

std::int64_t amdahl_time(const AmdahlParams& p) {
  if (p.t1_ns <= 0) throw DomainError("t1_ns must be positive");
  if (p.serial_fraction < 0.0 || p.serial_fraction > 1.0)
    throw DomainError("serial fraction must be in [0, 1]");
  if (p.n < 1) throw DomainError("core count must be >= 1");
  double b = p.serial_fraction;
  double t = static_cast<double>(p.t1_ns) * (b + (1.0 - b) / p.n);
  return std::llround(t);
}

double amdahl_speedup(double serial_fraction, int n) {
  if (serial_fraction < 0.0 || serial_fraction > 1.0)
    throw DomainError("serial fraction must be in [0, 1]");
  if (n < 1) throw DomainError("core count must be >= 1");
  if (n == 1) return 1.0;
  if (serial_fraction == 0.0) return static_cast<double>(n);
  return 1.0 / (serial_fraction + (1.0 - serial_fraction) / n);
}

namespace {

struct Bw {
  std::int64_t best = 0;
  std::int64_t worst = 0;
  std::int64_t paths = 1;
  bool assumed = false;
};

std::int64_t sat_mul(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > std::numeric_limits<std::int64_t>::max() / b)
    return std::numeric_limits<std::int64_t>::max();
  return a * b;
}

struct Analyzer {
  std::int64_t instr_ns;    // time per instruction at the given contention
  std::int64_t tick_ns;
  std::int64_t path_budget;
  std::map<std::string, BlockBounds>* per_block;

  Bw body(const TaskBody& b) {
    Bw acc;
    for (const Stmt& s : b.statements) {
      Bw w = stmt(s);
      acc.best += w.best;
      acc.worst += w.worst;
      acc.paths = sat_mul(acc.paths, w.paths);
      acc.assumed = acc.assumed || w.assumed;
      if (acc.paths > path_budget)
        throw PathExplosion("path count exceeds budget of " +
                            std::to_string(path_budget));
    }
    if (!b.name.empty())
      (*per_block)[b.name] = BlockBounds{acc.best, acc.worst};
    return acc;
  }

  Bw stmt(const Stmt& s) {
    Bw w;
    if (const auto* c = std::get_if<Compute>(&s.node)) {
      w.best = w.worst = c->instructions * instr_ns;
    } else if (std::get_if<ChanOut>(&s.node) || std::get_if<ChanIn>(&s.node)) {
      // 1 issue slot plus an unknown rendezvous wait (declared bound 0).
      w.best = instr_ns;
      w.worst = instr_ns;
      w.assumed = true;
    } else if (std::get_if<PortOut>(&s.node) || std::get_if<PortIn>(&s.node)) {
      w.best = w.worst = instr_ns;
    } else if (const auto* pa = std::get_if<PortOutAt>(&s.node)) {
      w.best = instr_ns;
      w.worst = instr_ns + pa->at_port_ticks * tick_ns;
    } else if (const auto* tw = std::get_if<TimerWaitUntil>(&s.node)) {
      w.best = 0;
      w.worst = tw->at_ref_ticks * tick_ns;
    } else if (const auto* sel = std::get_if<Select>(&s.node)) {
      w.best = std::numeric_limits<std::int64_t>::max();
      w.worst = 0;
      w.paths = 0;
      for (const SelectCase& c : sel->cases) {
        std::int64_t wait_bound = 0;
        if (const auto* ta = std::get_if<TimerAt>(&c.event))
          wait_bound = ta->at_ref_ticks * tick_ns;
        else
          w.assumed = true;  // channel/port event arrival time unknown
        Bw cb = body(c.body);
        w.best = std::min(w.best, cb.best);
        w.worst = std::max(w.worst, wait_bound + cb.worst);
        w.paths += cb.paths;
        w.assumed = w.assumed || cb.assumed;
      }
    } else if (const auto* par = std::get_if<Par>(&s.node)) {
      // Branches run concurrently; the join waits for the slowest.
      w.best = 0;
      w.worst = 0;
      for (const TaskBody& b : par->branches) {
        Bw bb = body(b);
        w.best = std::max(w.best, bb.best);
        w.worst = std::max(w.worst, bb.worst);
        w.paths = sat_mul(w.paths, bb.paths);
        w.assumed = w.assumed || bb.assumed;
      }
    } else if (const auto* rep = std::get_if<Repeat>(&s.node)) {
      if (rep->count < 0) throw UnboundedLoop("repeat count must be finite and >= 0");
      Bw bb = body(rep->body);
      w.best = bb.best * rep->count;
      w.worst = bb.worst * rep->count;
      w.paths = 1;
      for (std::int64_t i = 0; i < rep->count && w.paths <= path_budget; ++i)
        w.paths = sat_mul(w.paths, bb.paths);
      w.assumed = bb.assumed;
    }
    if (w.paths > path_budget)
      throw PathExplosion("path count exceeds budget of " +
                          std::to_string(path_budget));
    return w;
  }
};

}  // namespace

TimingBounds xta_bounds(const Program& program, const DeviceSpec& spec,
                        int contention, std::int64_t path_budget) {
  if (contention < 1 || contention > spec.core_count)
    throw DomainError("contention must be in 1..core_count");
  TimingBounds bounds;
  Analyzer a{spec.core_cycle_ns() * contention, spec.port_tick_ns(), path_budget,
             &bounds.per_block};
  Bw w = a.body(program.main);
  bounds.best_ns = w.best;
  bounds.worst_ns = w.worst;
  bounds.wait_bounds_assumed = w.assumed;
  return bounds;
}

}  // namespace xsim
