// Copyright (c) 2026 xsim contributors
// SPDX-License-Identifier: Apache-2.0

#include "xsim/program.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "xsim/errors.hpp"

using nlohmann::json;

namespace xsim {

namespace {

// ---------------------------------------------------------------- parsing

struct ParseCtx {
  std::set<std::string> channels;
  const json* tasks = nullptr;        // top-level "tasks" object
  std::set<std::string> task_names;   // for uniqueness across par branches
  int anon_branches = 0;              // synthesized branch names, program-wide
};

WordExpr parse_word(const json& j, const std::string& where) {
  WordExpr w;
  if (j.is_number_unsigned() || j.is_number_integer()) {
    auto v = j.get<std::int64_t>();
    if (v < 0 || v > 0xFFFFFFFFLL)
      throw ParseError(where + ": value out of 32-bit range");
    w.literal = static_cast<std::uint32_t>(v);
  } else if (j.is_string()) {
    w.var = j.get<std::string>();
    if (w.var.empty()) throw ParseError(where + ": empty variable name");
  } else if (j.is_object() && j.contains("var")) {
    w.var = j.at("var").get<std::string>();
    if (w.var.empty()) throw ParseError(where + ": empty variable name");
  } else {
    throw ParseError(where + ": expected integer or variable name");
  }
  return w;
}

void require_channel(const ParseCtx& ctx, const std::string& chan,
                     const std::string& where) {
  if (!ctx.channels.count(chan))
    throw ParseError(where + ": undeclared channel '" + chan + "'");
}

TaskBody parse_body(const json& stmts, std::string name, ParseCtx& ctx);

Event parse_event(const json& j, ParseCtx& ctx) {
  std::string type = j.at("type").get<std::string>();
  if (type == "chan_readable") {
    std::string chan = j.at("channel").get<std::string>();
    require_channel(ctx, chan, "chan_readable");
    return ChanReadable{chan};
  }
  if (type == "timer_at") {
    TimerAt e{j.at("timer").get<std::string>(), j.at("at").get<std::int64_t>()};
    if (e.at_ref_ticks < 0) throw ParseError("timer_at: negative timestamp");
    return e;
  }
  if (type == "port_changed") {
    return PortChanged{j.at("port").get<std::string>()};
  }
  throw UnknownConstruct("unknown event type: " + type);
}

TaskBody parse_par_branch(const json& j, const std::string& parent, int idx,
                          ParseCtx& ctx) {
  if (j.is_string()) {
    std::string ref = j.get<std::string>();
    if (!ctx.tasks || !ctx.tasks->contains(ref))
      throw ParseError("par: unknown task '" + ref + "'");
    return parse_body(ctx.tasks->at(ref), ref, ctx);
  }
  if (j.is_array()) {
    (void)idx;
    return parse_body(j, parent + "_b" + std::to_string(ctx.anon_branches++), ctx);
  }
  if (j.is_object() && j.contains("task")) {
    std::string ref = j.at("task").get<std::string>();
    if (j.contains("body")) return parse_body(j.at("body"), ref, ctx);
    if (!ctx.tasks || !ctx.tasks->contains(ref))
      throw ParseError("par: unknown task '" + ref + "'");
    return parse_body(ctx.tasks->at(ref), ref, ctx);
  }
  throw ParseError("par: branch must be a task name, an object, or a list");
}

Stmt parse_stmt(const json& j, const std::string& parent, ParseCtx& ctx) {
  if (!j.is_object() || !j.contains("op"))
    throw ParseError("statement must be an object with an \"op\" tag");
  std::string op = j.at("op").get<std::string>();
  Stmt s;
  if (op == "compute") {
    Compute c{j.at("instructions").get<std::int64_t>()};
    if (c.instructions < 0) throw ParseError("compute: negative instruction count");
    s.node = c;
  } else if (op == "chan_out") {
    std::string chan = j.at("channel").get<std::string>();
    require_channel(ctx, chan, "chan_out");
    s.node = ChanOut{chan, parse_word(j.at("value"), "chan_out")};
  } else if (op == "chan_in") {
    std::string chan = j.at("channel").get<std::string>();
    require_channel(ctx, chan, "chan_in");
    s.node = ChanIn{chan, j.at("bind").get<std::string>()};
  } else if (op == "port_out") {
    s.node = PortOut{j.at("port").get<std::string>(),
                     parse_word(j.at("value"), "port_out")};
  } else if (op == "port_out_at") {
    PortOutAt p{j.at("port").get<std::string>(), j.at("at").get<std::int64_t>(),
                parse_word(j.at("value"), "port_out_at")};
    if (p.at_port_ticks < 0) throw ParseError("port_out_at: negative timestamp");
    s.node = p;
  } else if (op == "port_in") {
    s.node = PortIn{j.at("port").get<std::string>(), j.at("bind").get<std::string>()};
  } else if (op == "timer_wait") {
    TimerWaitUntil t{j.at("timer").get<std::string>(), j.at("at").get<std::int64_t>()};
    if (t.at_ref_ticks < 0) throw ParseError("timer_wait: negative timestamp");
    s.node = t;
  } else if (op == "select") {
    Select sel;
    const json& cases = j.at("cases");
    if (!cases.is_array() || cases.empty())
      throw ParseError("select: needs at least one case");
    int idx = 0;
    for (const json& c : cases) {
      SelectCase sc;
      sc.event = parse_event(c.at("event"), ctx);
      sc.body = parse_body(c.at("body"), "", ctx);
      sel.cases.push_back(std::move(sc));
      ++idx;
    }
    s.node = std::move(sel);
  } else if (op == "par") {
    Par par;
    const json& branches = j.at("branches");
    if (!branches.is_array() || branches.empty())
      throw ParseError("par: needs at least one branch");
    int idx = 0;
    for (const json& b : branches) {
      TaskBody body = parse_par_branch(b, parent, idx, ctx);
      if (!ctx.task_names.insert(body.name).second)
        throw DuplicateName("duplicate task name: " + body.name);
      par.branches.push_back(std::move(body));
      ++idx;
    }
    s.node = std::move(par);
  } else if (op == "repeat") {
    Repeat r;
    r.count = j.at("count").get<std::int64_t>();
    if (r.count < 0) throw ParseError("repeat: negative count");
    r.body = parse_body(j.at("body"), "", ctx);
    s.node = std::move(r);
  } else {
    throw UnknownConstruct("unknown statement op: " + op);
  }
  return s;
}

TaskBody parse_body(const json& stmts, std::string name, ParseCtx& ctx) {
  if (!stmts.is_array()) throw ParseError("task body must be a list of statements");
  TaskBody body;
  body.name = std::move(name);
  for (const json& s : stmts) body.statements.push_back(parse_stmt(s, body.name, ctx));
  return body;
}

// ---------------------------------------------------------- serialization

json word_to_json(const WordExpr& w) {
  if (w.is_var()) return w.var;
  return w.literal;
}

json body_to_json(const TaskBody& body);

json event_to_json(const Event& e) {
  json j;
  if (const auto* c = std::get_if<ChanReadable>(&e)) {
    j = {{"type", "chan_readable"}, {"channel", c->channel}};
  } else if (const auto* t = std::get_if<TimerAt>(&e)) {
    j = {{"type", "timer_at"}, {"timer", t->timer}, {"at", t->at_ref_ticks}};
  } else {
    j = {{"type", "port_changed"}, {"port", std::get<PortChanged>(e).port}};
  }
  return j;
}

struct StmtSerializer {
  json operator()(const Compute& c) const {
    return {{"op", "compute"}, {"instructions", c.instructions}};
  }
  json operator()(const ChanOut& c) const {
    return {{"op", "chan_out"}, {"channel", c.channel}, {"value", word_to_json(c.value)}};
  }
  json operator()(const ChanIn& c) const {
    return {{"op", "chan_in"}, {"channel", c.channel}, {"bind", c.bind}};
  }
  json operator()(const PortOut& p) const {
    return {{"op", "port_out"}, {"port", p.port}, {"value", word_to_json(p.value)}};
  }
  json operator()(const PortOutAt& p) const {
    return {{"op", "port_out_at"},
            {"port", p.port},
            {"at", p.at_port_ticks},
            {"value", word_to_json(p.value)}};
  }
  json operator()(const PortIn& p) const {
    return {{"op", "port_in"}, {"port", p.port}, {"bind", p.bind}};
  }
  json operator()(const TimerWaitUntil& t) const {
    return {{"op", "timer_wait"}, {"timer", t.timer}, {"at", t.at_ref_ticks}};
  }
  json operator()(const Select& s) const {
    json cases = json::array();
    for (const SelectCase& c : s.cases) {
      cases.push_back({{"event", event_to_json(c.event)},
                       {"body", body_to_json(c.body)["stmts"]}});
    }
    return {{"op", "select"}, {"cases", cases}};
  }
  json operator()(const Par& p) const {
    json branches = json::array();
    for (const TaskBody& b : p.branches) {
      branches.push_back({{"task", b.name}, {"body", body_to_json(b)["stmts"]}});
    }
    return {{"op", "par"}, {"branches", branches}};
  }
  json operator()(const Repeat& r) const {
    return {{"op", "repeat"},
            {"count", r.count},
            {"body", body_to_json(r.body)["stmts"]}};
  }
};

json body_to_json(const TaskBody& body) {
  json stmts = json::array();
  for (const Stmt& s : body.statements) stmts.push_back(std::visit(StmtSerializer{}, s.node));
  return {{"stmts", stmts}};
}

std::pair<int, int> line_col(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') { ++line; col = 1; } else { ++col; }
  }
  return {line, col};
}

}  // namespace

Program parse_program(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError(e.what(), line, col);
  }
  try {
    Program p;
    p.name = j.value("name", "");
    ParseCtx ctx;
    if (j.contains("channels")) {
      for (const json& c : j.at("channels")) {
        std::string name = c.get<std::string>();
        if (!ctx.channels.insert(name).second)
          throw DuplicateName("duplicate channel name: " + name);
        p.channels.push_back(name);
      }
    }
    json tasks;
    if (j.contains("tasks")) tasks = j.at("tasks");
    ctx.tasks = &tasks;
    if (j.contains("stacks")) {
      for (const auto& [task, bytes] : j.at("stacks").items())
        p.declared_stack_bytes[task] = bytes.get<std::int64_t>();
    }
    if (j.contains("program_bytes"))
      p.declared_program_bytes = j.at("program_bytes").get<std::int64_t>();
    if (j.contains("chanends"))
      p.declared_chanends = j.at("chanends").get<int>();
    if (j.contains("glyphs")) p.glyphs = j.at("glyphs").get<std::string>();
    ctx.task_names.insert("main");
    p.main = parse_body(j.at("main"), "main", ctx);
    return p;
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
}

Program parse_program_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open program file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_program(ss.str());
}

std::string serialize_program(const Program& program) {
  json j;
  j["name"] = program.name;
  j["channels"] = program.channels;
  j["main"] = body_to_json(program.main)["stmts"];
  json stacks = json::object();
  for (const auto& [task, bytes] : program.declared_stack_bytes) stacks[task] = bytes;
  j["stacks"] = stacks;
  if (program.declared_program_bytes) j["program_bytes"] = *program.declared_program_bytes;
  if (program.declared_chanends) j["chanends"] = *program.declared_chanends;
  if (program.glyphs) j["glyphs"] = *program.glyphs;
  return j.dump(2) + "\n";
}

// --------------------------------------------------------------- validate

namespace {

int peak_cores(const TaskBody& body);

int peak_cores_stmt(const Stmt& s) {
  if (const auto* par = std::get_if<Par>(&s.node)) {
    int sum = 0;
    for (const TaskBody& b : par->branches) sum += peak_cores(b);
    return sum;  // parent suspends, branch 0 reuses its core
  }
  if (const auto* rep = std::get_if<Repeat>(&s.node)) return peak_cores(rep->body);
  if (const auto* sel = std::get_if<Select>(&s.node)) {
    int best = 1;
    for (const SelectCase& c : sel->cases) best = std::max(best, peak_cores(c.body));
    return best;
  }
  return 1;
}

int peak_cores(const TaskBody& body) {
  int peak = 1;
  for (const Stmt& s : body.statements) peak = std::max(peak, peak_cores_stmt(s));
  return peak;
}

std::int64_t peak_stack(const TaskBody& body, const Program& p);

std::int64_t extra_stack_stmt(const Stmt& s, const Program& p) {
  if (const auto* par = std::get_if<Par>(&s.node)) {
    std::int64_t sum = 0;
    for (const TaskBody& b : par->branches) sum += peak_stack(b, p);
    return sum;
  }
  if (const auto* rep = std::get_if<Repeat>(&s.node)) {
    std::int64_t peak = 0;
    for (const Stmt& inner : rep->body.statements)
      peak = std::max(peak, extra_stack_stmt(inner, p));
    return peak;
  }
  if (const auto* sel = std::get_if<Select>(&s.node)) {
    std::int64_t peak = 0;
    for (const SelectCase& c : sel->cases)
      for (const Stmt& inner : c.body.statements)
        peak = std::max(peak, extra_stack_stmt(inner, p));
    return peak;
  }
  return 0;
}

std::int64_t peak_stack(const TaskBody& body, const Program& p) {
  std::int64_t own = 0;
  auto it = p.declared_stack_bytes.find(body.name);
  if (it != p.declared_stack_bytes.end()) own = it->second;
  std::int64_t extra = 0;
  for (const Stmt& s : body.statements)
    extra = std::max(extra, extra_stack_stmt(s, p));
  return own + extra;
}

void collect_timers(const TaskBody& body, std::set<std::string>& timers);

void collect_timers_stmt(const Stmt& s, std::set<std::string>& timers) {
  if (const auto* t = std::get_if<TimerWaitUntil>(&s.node)) {
    timers.insert(t->timer);
  } else if (const auto* par = std::get_if<Par>(&s.node)) {
    for (const TaskBody& b : par->branches) collect_timers(b, timers);
  } else if (const auto* rep = std::get_if<Repeat>(&s.node)) {
    collect_timers(rep->body, timers);
  } else if (const auto* sel = std::get_if<Select>(&s.node)) {
    for (const SelectCase& c : sel->cases) {
      if (const auto* ta = std::get_if<TimerAt>(&c.event)) timers.insert(ta->timer);
      collect_timers(c.body, timers);
    }
  }
}

void collect_timers(const TaskBody& body, std::set<std::string>& timers) {
  for (const Stmt& s : body.statements) collect_timers_stmt(s, timers);
}

std::int64_t count_nodes(const TaskBody& body);

std::int64_t count_nodes_stmt(const Stmt& s) {
  std::int64_t n = 1;
  if (const auto* par = std::get_if<Par>(&s.node)) {
    for (const TaskBody& b : par->branches) n += count_nodes(b);
  } else if (const auto* rep = std::get_if<Repeat>(&s.node)) {
    n += count_nodes(rep->body);
  } else if (const auto* sel = std::get_if<Select>(&s.node)) {
    for (const SelectCase& c : sel->cases) n += count_nodes(c.body);
  }
  return n;
}

std::int64_t count_nodes(const TaskBody& body) {
  std::int64_t n = 0;
  for (const Stmt& s : body.statements) n += count_nodes_stmt(s);
  return n;
}

}  // namespace

ResourceLedger validate(const Program& program, const DeviceSpec& spec) {
  ResourceLedger ledger;
  ledger.spec = spec;

  ledger.cores_used = peak_cores(program.main);
  if (ledger.cores_used > spec.core_count) {
    throw CoreExhausted("program needs " + std::to_string(ledger.cores_used) +
                        " cores, device has " + std::to_string(spec.core_count));
  }

  ledger.chanends_used =
      program.declared_chanends.value_or(static_cast<int>(program.channels.size()) * 2);
  if (ledger.chanends_used > spec.chanend_count) {
    throw ChanendExhausted("program needs " + std::to_string(ledger.chanends_used) +
                           " chanends, device has " + std::to_string(spec.chanend_count));
  }

  std::set<std::string> timers;
  collect_timers(program.main, timers);
  ledger.timers_used = static_cast<int>(timers.size());
  if (ledger.timers_used > spec.timer_count) {
    throw TimerExhausted("program needs " + std::to_string(ledger.timers_used) +
                         " timers, device has " + std::to_string(spec.timer_count));
  }

  ledger.stack_bytes_used = peak_stack(program.main, program);
  ledger.program_bytes_used =
      program.declared_program_bytes.value_or(count_nodes(program.main) * 4);
  if (ledger.stack_bytes_used + ledger.program_bytes_used > spec.memory_bytes) {
    throw MemoryExhausted("program needs " +
                          std::to_string(ledger.stack_bytes_used +
                                         ledger.program_bytes_used) +
                          " bytes, device has " + std::to_string(spec.memory_bytes));
  }
  return ledger;
}

}  // namespace xsim
