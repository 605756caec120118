// Copyright (c) 2026 xsim contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "xsim/machine.hpp"
#include "xsim/program.hpp"

namespace xsim {

struct AmdahlParams {
  std::int64_t t1_ns = 0;     // single-core time T(1)
  double serial_fraction = 0; // B in [0, 1]
  int n = 1;                  // core count
};

// T(n) = T(1) * (B + (1-B)/n), rounded to nearest ns.
std::int64_t amdahl_time(const AmdahlParams& p);

// S(n) = 1 / (B + (1-B)/n). Exact at the boundary cases: S(B,1) = 1 and
// S(0,n) = n without floating-point drift.
double amdahl_speedup(double serial_fraction, int n);

struct BlockBounds {
  std::int64_t best_ns = 0;
  std::int64_t worst_ns = 0;
};

struct TimingBounds {
  std::int64_t best_ns = 0;
  std::int64_t worst_ns = 0;
  bool wait_bounds_assumed = false;  // a rendezvous wait defaulted to 0
  std::map<std::string, BlockBounds> per_block;
};

// Static best/worst-case execution time over all select paths.
// Instructions convert at 2 * contention ns each; blocking waits
// contribute 0 to best and their declared bound (timed waits: the literal
// timestamp; rendezvous: 0, flagged assumed) to worst. Path counts above
// the budget raise PathExplosion.
TimingBounds xta_bounds(const Program& program, const DeviceSpec& spec,
                        int contention, std::int64_t path_budget = 1'000'000);

}  // namespace xsim
