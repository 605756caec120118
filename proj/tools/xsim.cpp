// Copyright (c) 2026 xsim contributors
// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "xsim/analysis.hpp"
#include "xsim/errors.hpp"
#include "xsim/machine.hpp"
#include "xsim/peripherals.hpp"
#include "xsim/profiler.hpp"
#include "xsim/program.hpp"
#include "xsim/sim.hpp"
#include "xsim/trace.hpp"

namespace {

// Accepts "100ms", "2us", "1s", "500ns" or a bare nanosecond count.
std::int64_t parse_time_ns(const std::string& text) {
  std::size_t pos = 0;
  while (pos < text.size() && (std::isdigit(text[pos]) || text[pos] == '-')) ++pos;
  std::int64_t value = std::stoll(text.substr(0, pos));
  std::string unit = text.substr(pos);
  if (unit.empty() || unit == "ns") return value;
  if (unit == "us") return value * 1'000;
  if (unit == "ms") return value * 1'000'000;
  if (unit == "s") return value * 1'000'000'000;
  throw CLI::ValidationError("unknown time unit: " + unit);
}

std::string require_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CommonArgs {
  std::string program_path;
  std::string spec_profile = "startkit";
  std::string stimulus_path;
  std::string until;
  std::string format = "text";
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_run_opts) {
  cmd->add_option("program", args.program_path, "program file (JSON)")->required();
  cmd->add_option("--spec", args.spec_profile, "device profile name");
  cmd->add_option("--format", args.format, "output format")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  if (with_run_opts) {
    cmd->add_option("--stimulus", args.stimulus_path, "port stimulus file (JSON)");
    cmd->add_option("--until", args.until, "stop time (ns/us/ms/s suffix)");
  }
}

xsim::RunResult run_program(const CommonArgs& args, xsim::ResourceLedger* ledger) {
  xsim::Program program = xsim::parse_program(require_file(args.program_path));
  xsim::DeviceSpec spec = xsim::default_spec(args.spec_profile);
  xsim::Simulator sim(std::move(program), spec);
  if (!args.stimulus_path.empty())
    sim.add_stimulus(xsim::load_stimulus_file(args.stimulus_path));
  std::optional<std::int64_t> until;
  if (!args.until.empty()) until = parse_time_ns(args.until);
  xsim::RunResult result = sim.run(until);
  if (ledger) *ledger = sim.ledger();
  return result;
}

int cmd_run(const CommonArgs& args) {
  xsim::ResourceLedger ledger;
  xsim::RunResult result = run_program(args, &ledger);
  if (args.format == "csv")
    std::cout << xsim::trace_to_csv(result.trace);
  else
    std::cout << xsim::trace_to_jsonl(result.trace);
  if (args.format != "csv") {
    std::vector<xsim::TaskProfile> empty;
    std::string report = xsim::render_reports(empty, ledger);
    // only the resource table and platform summary after a run
    std::size_t cut = report.find("== Resource usage ==");
    std::cout << '\n' << (cut == std::string::npos ? report : report.substr(cut));
  }
  if (result.outcome == xsim::RunOutcome::deadlock) {
    std::cerr << "deadlock detected; blocked:\n";
    for (const std::string& b : result.blocked) std::cerr << "  " << b << '\n';
    return 1;
  }
  return 0;
}

int cmd_validate(const CommonArgs& args) {
  xsim::Program program = xsim::parse_program(require_file(args.program_path));
  xsim::DeviceSpec spec = xsim::default_spec(args.spec_profile);
  xsim::ResourceLedger ledger = xsim::validate(program, spec);
  std::vector<xsim::TaskProfile> empty;
  if (args.format == "json")
    std::cout << xsim::render_reports_json(empty, ledger);
  else
    std::cout << xsim::render_reports(empty, ledger);
  return 0;
}

int cmd_profile(const CommonArgs& args) {
  xsim::ResourceLedger ledger;
  xsim::RunResult result = run_program(args, &ledger);
  std::vector<xsim::TaskProfile> profiles = xsim::profile(result.trace);
  if (args.format == "json")
    std::cout << xsim::render_reports_json(profiles, ledger);
  else
    std::cout << xsim::render_reports(profiles, ledger);
  return result.outcome == xsim::RunOutcome::deadlock ? 1 : 0;
}

int cmd_analyze(const CommonArgs& args, int contention) {
  xsim::Program program = xsim::parse_program(require_file(args.program_path));
  xsim::DeviceSpec spec = xsim::default_spec(args.spec_profile);
  xsim::validate(program, spec);
  xsim::TimingBounds bounds = xsim::xta_bounds(program, spec, contention);
  if (args.format == "csv") {
    std::cout << "block,best_ns,worst_ns\n";
    for (const auto& [block, bw] : bounds.per_block)
      std::cout << block << ',' << bw.best_ns << ',' << bw.worst_ns << '\n';
    std::cout << "TOTAL," << bounds.best_ns << ',' << bounds.worst_ns << '\n';
  } else {
    std::printf("%-24s %14s %14s\n", "block", "best_ns", "worst_ns");
    for (const auto& [block, bw] : bounds.per_block)
      std::printf("%-24s %14lld %14lld\n", block.c_str(),
                  static_cast<long long>(bw.best_ns),
                  static_cast<long long>(bw.worst_ns));
    std::printf("%-24s %14lld %14lld\n", "TOTAL",
                static_cast<long long>(bounds.best_ns),
                static_cast<long long>(bounds.worst_ns));
    if (bounds.wait_bounds_assumed)
      std::printf("note: some blocking waits have assumed (zero) bounds\n");
  }
  return 0;
}

int cmd_amdahl(double b, const std::string& n_list, const std::string& t1) {
  std::vector<int> ns;
  std::stringstream ss(n_list);
  std::string item;
  while (std::getline(ss, item, ',')) ns.push_back(std::stoi(item));
  if (ns.empty()) throw CLI::ValidationError("--n needs at least one core count");

  std::optional<std::int64_t> t1_ns;
  if (!t1.empty()) t1_ns = parse_time_ns(t1);

  if (t1_ns)
    std::printf("%6s %12s %16s\n", "n", "S(n)", "T(n)_ns");
  else
    std::printf("%6s %12s\n", "n", "S(n)");
  for (int n : ns) {
    double s = xsim::amdahl_speedup(b, n);
    if (t1_ns) {
      std::int64_t tn = xsim::amdahl_time({*t1_ns, b, n});
      std::printf("%6d %12.4f %16lld\n", n, s, static_cast<long long>(tn));
    } else {
      std::printf("%6d %12.4f\n", n, s);
    }
  }
  return 0;
}

int cmd_render(const CommonArgs& args, const std::string& trace_path) {
  std::vector<xsim::TraceEvent> trace;
  if (!trace_path.empty()) {
    trace = xsim::trace_from_jsonl(require_file(trace_path));
  } else {
    xsim::RunResult result = run_program(args, nullptr);
    trace = std::move(result.trace);
  }
  xsim::LedMapping mapping = xsim::LedMapping::standard();
  std::vector<xsim::LedGrid> frames = xsim::frames_from_trace(trace, mapping);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    if (i) std::cout << '\n';
    std::cout << xsim::render_grid(frames[i]);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multicore microcontroller simulator and timing analyzer"};
  app.require_subcommand(1);

  CommonArgs run_args, validate_args, profile_args, analyze_args, render_args;
  int contention = 1;
  double amdahl_b = 0.0;
  std::string amdahl_n = "1";
  std::string amdahl_t1;
  std::string render_trace;

  add_common(app.add_subcommand("run", "simulate a program and emit its trace"),
             run_args, true);
  add_common(app.add_subcommand("validate", "static resource check"),
             validate_args, false);
  add_common(app.add_subcommand("profile", "simulate and report per-task times"),
             profile_args, true);
  CLI::App* analyze =
      app.add_subcommand("analyze", "best/worst-case timing bounds");
  add_common(analyze, analyze_args, false);
  analyze->add_option("--contention", contention,
                      "assumed number of cores sharing issue slots");
  CLI::App* amdahl = app.add_subcommand("amdahl", "speedup projection");
  amdahl->add_option("--B", amdahl_b, "serial fraction in [0,1]")->required();
  amdahl->add_option("--n", amdahl_n, "comma-separated core counts")->required();
  amdahl->add_option("--t1", amdahl_t1, "single-core time (with unit suffix)");
  CLI::App* render = app.add_subcommand("render", "LED matrix frames as text");
  render->add_option("program", render_args.program_path, "program file (JSON)");
  render->add_option("--spec", render_args.spec_profile, "device profile name");
  render->add_option("--until", render_args.until, "stop time");
  render->add_option("--from-trace", render_trace, "decode an existing JSONL trace");

  try {
    app.parse(argc, argv);
    if (app.got_subcommand("run")) return cmd_run(run_args);
    if (app.got_subcommand("validate")) return cmd_validate(validate_args);
    if (app.got_subcommand("profile")) return cmd_profile(profile_args);
    if (app.got_subcommand("analyze")) return cmd_analyze(analyze_args, contention);
    if (app.got_subcommand("amdahl"))
      return cmd_amdahl(amdahl_b, amdahl_n, amdahl_t1);
    if (app.got_subcommand("render")) {
      if (render_args.program_path.empty() && render_trace.empty())
        throw CLI::ValidationError("render needs a program or --from-trace");
      return cmd_render(render_args, render_trace);
    }
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const xsim::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
