// Copyright (c) 2026 xsim contributors
// SPDX-License-Identifier: Apache-2.0

#include "xsim/sim.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <queue>
#include <set>
#include <sstream>

#include "xsim/errors.hpp"

namespace xsim {

namespace {

void collect_ports(const TaskBody& body, std::set<std::string>& ports);

void collect_ports_stmt(const Stmt& s, std::set<std::string>& ports) {
  if (const auto* p = std::get_if<PortOut>(&s.node)) {
    ports.insert(p->port);
  } else if (const auto* p = std::get_if<PortOutAt>(&s.node)) {
    ports.insert(p->port);
  } else if (const auto* p = std::get_if<PortIn>(&s.node)) {
    ports.insert(p->port);
  } else if (const auto* par = std::get_if<Par>(&s.node)) {
    for (const TaskBody& b : par->branches) collect_ports(b, ports);
  } else if (const auto* rep = std::get_if<Repeat>(&s.node)) {
    collect_ports(rep->body, ports);
  } else if (const auto* sel = std::get_if<Select>(&s.node)) {
    for (const SelectCase& c : sel->cases) {
      if (const auto* pc = std::get_if<PortChanged>(&c.event)) ports.insert(pc->port);
      collect_ports(c.body, ports);
    }
  }
}

void collect_ports(const TaskBody& body, std::set<std::string>& ports) {
  for (const Stmt& s : body.statements) collect_ports_stmt(s, ports);
}

}  // namespace

struct Simulator::Impl {
  // ------------------------------------------------------------- state

  struct Frame {
    const std::vector<Stmt>* stmts = nullptr;
    std::size_t idx = 0;
    std::int64_t iters_left = 1;  // >1 only while a repeat re-runs its body
  };

  struct PortState {
    std::uint32_t value = 0;
    std::uint64_t version = 0;
    int width = 32;
  };

  // Waiters queue FIFO per direction. A well-formed program has at most
  // one per side; extra waiters simply queue (and deadlock if unmatched).
  struct ChannelState {
    std::deque<int> senders;
    std::deque<int> receivers;
  };

  struct Task {
    int id = 0;
    std::string name;
    int core = -1;
    std::vector<Frame> frames;
    std::map<std::string, std::uint32_t> vars;

    enum class St { ready, blocked, join, done };
    St st = St::ready;
    std::string wait_note;
    bool in_select = false;
    const Select* sel = nullptr;
    std::map<std::string, std::uint64_t> sel_port_seen;
    std::uint64_t wake_seq = 0;  // invalidates stale timer wakeups

    std::int64_t compute_left = 0;
    std::int64_t compute_total = 0;
    std::string pending_bind;       // bind target while blocked in chan_in
    std::uint32_t pending_value = 0;  // word carried while blocked in chan_out

    int parent = -1;
    int children_left = 0;
    bool returns_core_to_parent = false;

    std::int64_t start_ns = 0;
    std::int64_t block_start = 0;
    std::int64_t busy_ns = 0;
    std::int64_t blocked_ns = 0;
    std::int64_t instr = 0;
  };

  struct Pending {
    std::int64_t t = 0;
    std::int64_t seq = 0;
    enum class Kind { drive, stimulus, timer_wake } kind = Kind::drive;
    int task = -1;
    std::uint64_t wake_seq = 0;
    std::string port;
    std::uint32_t value = 0;
    bool operator>(const Pending& o) const {
      return t != o.t ? t > o.t : seq > o.seq;
    }
  };

  Program program;
  DeviceSpec spec;
  ResourceLedger res_ledger;

  std::vector<Task> tasks;
  std::map<std::string, PortState> ports;
  std::map<std::string, ChannelState> channels;
  std::set<std::string> timers_seen;
  std::vector<int> core_owner;  // task id per core, -1 = idle
  int cores_in_use = 0;

  std::priority_queue<Pending, std::vector<Pending>, std::greater<>> pending;
  std::int64_t pending_seq = 0;

  std::int64_t now = 0;
  int rr_cursor = 0;
  bool started = false;
  bool dead = false;
  std::vector<TraceEvent> trace;

  std::int64_t cycle_ns = 2;
  std::int64_t tick_ns = 10;

  // ------------------------------------------------------------ helpers

  void emit(std::int64_t t, TraceKind kind, int core, nlohmann::json detail) {
    trace.push_back({t, kind, core, std::move(detail)});
  }

  std::uint32_t eval(const WordExpr& w, const Task& t) const {
    if (!w.is_var()) return w.literal;
    auto it = t.vars.find(w.var);
    if (it == t.vars.end())
      throw Error("task '" + t.name + "': unbound variable '" + w.var + "'");
    return it->second;
  }

  int alloc_core(const std::string& task_name) {
    for (int c = 0; c < spec.core_count; ++c) {
      if (core_owner[c] < 0) {
        ++cores_in_use;
        if (cores_in_use > res_ledger.cores_used)
          throw Error("runtime core demand exceeds validated ledger (task '" +
                      task_name + "')");
        return c;
      }
    }
    throw CoreExhausted("no free core for task '" + task_name + "'");
  }

  void push_pending(Pending p) {
    p.seq = pending_seq++;
    pending.push(std::move(p));
  }

  void drive_port(const std::string& name, std::uint32_t value, std::int64_t t,
                  int core, bool stimulus) {
    PortState& ps = ports.at(name);
    if (ps.width < 32) value &= (1u << ps.width) - 1u;
    ps.value = value;
    ++ps.version;
    nlohmann::json detail = {{"port", name}, {"value", value}};
    if (stimulus) detail["stimulus"] = true;
    emit(t, TraceKind::port_drive, core, std::move(detail));
    wake_blocked_selects(t);
  }

  // -------------------------------------------------------- select logic

  // Returns the lowest ready case index, or -1. `first_eval` suppresses
  // PortChanged (a change needs a reference point recorded at block time).
  int ready_case(const Task& t, const Select& sel, std::int64_t at,
                 bool first_eval) const {
    for (std::size_t i = 0; i < sel.cases.size(); ++i) {
      const Event& e = sel.cases[i].event;
      if (const auto* cr = std::get_if<ChanReadable>(&e)) {
        auto it = channels.find(cr->channel);
        if (it != channels.end() && !it->second.senders.empty())
          return static_cast<int>(i);
      } else if (const auto* ta = std::get_if<TimerAt>(&e)) {
        if (at >= ta->at_ref_ticks * tick_ns) return static_cast<int>(i);
      } else if (const auto* pc = std::get_if<PortChanged>(&e)) {
        if (first_eval) continue;
        auto seen = t.sel_port_seen.find(pc->port);
        auto cur = ports.find(pc->port);
        if (seen != t.sel_port_seen.end() && cur != ports.end() &&
            cur->second.version != seen->second)
          return static_cast<int>(i);
      }
    }
    return -1;
  }

  void fire_select(Task& t, int case_idx, std::int64_t at) {
    const Select& sel = *t.sel;
    if (t.st == Task::St::blocked) t.blocked_ns += at - t.block_start;
    emit(at, TraceKind::select_taken, t.core,
         {{"task", t.name}, {"case", case_idx}});
    t.frames.back().idx++;  // the select statement is resolved
    t.in_select = false;
    t.sel = nullptr;
    t.sel_port_seen.clear();
    t.st = Task::St::ready;
    t.wait_note.clear();
    ++t.wake_seq;
    t.frames.push_back(Frame{&sel.cases[case_idx].body.statements, 0, 1});
    settle(t, at);
  }

  // Index loop: fire_select can spawn tasks and reallocate the vector.
  void wake_blocked_selects(std::int64_t at) {
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      if (tasks[i].st != Task::St::blocked || !tasks[i].in_select) continue;
      int idx = ready_case(tasks[i], *tasks[i].sel, at, false);
      if (idx >= 0) fire_select(tasks[i], idx, at);
    }
  }

  // ----------------------------------------------------- control settling

  // Resolves zero-cost control (par, repeat, select dispatch, elapsed timer
  // waits, task completion) until the task reaches a slot-consuming
  // operation or blocks.
  void settle(Task& t, std::int64_t at) {
    if (t.st != Task::St::ready) return;
    if (t.compute_left > 0) return;  // mid-compute, nothing to resolve
    while (true) {
      if (t.frames.empty()) {
        finish_task(t, at);
        return;
      }
      Frame& f = t.frames.back();
      if (f.idx >= f.stmts->size()) {
        if (f.iters_left > 1) {
          --f.iters_left;
          f.idx = 0;
          continue;
        }
        t.frames.pop_back();
        continue;
      }
      const Stmt& s = (*f.stmts)[f.idx];
      if (const auto* c = std::get_if<Compute>(&s.node)) {
        if (c->instructions == 0) {
          ++f.idx;
          continue;
        }
        t.compute_left = c->instructions;
        t.compute_total = c->instructions;
        return;  // needs issue slots
      }
      if (const auto* rep = std::get_if<Repeat>(&s.node)) {
        ++f.idx;
        if (rep->count > 0)
          t.frames.push_back(Frame{&rep->body.statements, 0, rep->count});
        continue;
      }
      if (const auto* tw = std::get_if<TimerWaitUntil>(&s.node)) {
        std::int64_t deadline = tw->at_ref_ticks * tick_ns;
        timers_seen.insert(tw->timer);
        if (at >= deadline) {
          ++f.idx;
          continue;
        }
        t.st = Task::St::blocked;
        t.wait_note = "timer " + tw->timer + " @" + std::to_string(tw->at_ref_ticks);
        t.block_start = at;
        Pending wake;
        wake.t = deadline;
        wake.kind = Pending::Kind::timer_wake;
        wake.task = t.id;
        wake.wake_seq = t.wake_seq;
        push_pending(std::move(wake));
        return;
      }
      if (const auto* sel = std::get_if<Select>(&s.node)) {
        int idx = ready_case(t, *sel, at, true);
        if (idx >= 0) {
          t.sel = sel;
          t.in_select = true;
          fire_select(t, idx, at);
          return;
        }
        // Block and subscribe.
        t.sel = sel;
        t.in_select = true;
        t.st = Task::St::blocked;
        t.wait_note = "select";
        t.block_start = at;
        t.sel_port_seen.clear();
        for (const SelectCase& c : sel->cases) {
          if (const auto* ta = std::get_if<TimerAt>(&c.event)) {
            timers_seen.insert(ta->timer);
            Pending wake;
            wake.t = ta->at_ref_ticks * tick_ns;
            wake.kind = Pending::Kind::timer_wake;
            wake.task = t.id;
            wake.wake_seq = t.wake_seq;
            push_pending(std::move(wake));
          } else if (const auto* pc = std::get_if<PortChanged>(&c.event)) {
            t.sel_port_seen[pc->port] = ports.at(pc->port).version;
          }
        }
        return;
      }
      if (const auto* par = std::get_if<Par>(&s.node)) {
        ++f.idx;
        fork_par(t, *par, at);
        return;
      }
      // Slot-consuming I/O op: wait for the scheduler.
      return;
    }
  }

  void fork_par(Task& parent, const Par& par, std::int64_t at) {
    parent.st = Task::St::join;
    parent.wait_note = "join";
    parent.block_start = at;
    parent.children_left = static_cast<int>(par.branches.size());
    // tasks.push_back below can reallocate; keep no reference to parent.
    const int parent_id = parent.id;
    const int parent_core = parent.core;

    std::vector<int> spawned;
    for (std::size_t i = 0; i < par.branches.size(); ++i) {
      const TaskBody& branch = par.branches[i];
      Task child;
      child.id = static_cast<int>(tasks.size());
      child.name = branch.name;
      child.parent = parent_id;
      child.returns_core_to_parent = (i == 0);
      child.start_ns = at;
      if (i == 0) {
        child.core = parent_core;
      } else {
        child.core = alloc_core(branch.name);
        emit(at, TraceKind::core_alloc, child.core, {{"task", branch.name}});
      }
      child.frames.push_back(Frame{&branch.statements, 0, 1});
      core_owner[child.core] = child.id;
      emit(at, TraceKind::task_start, child.core, {{"task", branch.name}});
      spawned.push_back(child.id);
      tasks.push_back(std::move(child));
    }
    for (int id : spawned) settle(tasks[id], at);
  }

  void finish_task(Task& t, std::int64_t at) {
    t.st = Task::St::done;
    emit(at, TraceKind::task_end, t.core,
         {{"task", t.name},
          {"busy_ns", t.busy_ns},
          {"blocked_ns", t.blocked_ns},
          {"instructions", t.instr}});
    if (t.parent >= 0) {
      Task& p = tasks[t.parent];
      if (t.returns_core_to_parent) {
        core_owner[t.core] = p.id;
      } else {
        emit(at, TraceKind::core_free, t.core, {{"task", t.name}});
        core_owner[t.core] = -1;
        --cores_in_use;
      }
      --p.children_left;
      if (p.children_left == 0) {
        p.blocked_ns += at - p.block_start;
        p.st = Task::St::ready;
        p.wait_note.clear();
        settle(p, at);
      }
    } else {
      core_owner[t.core] = -1;
      --cores_in_use;
    }
  }

  // ------------------------------------------------------ slot execution

  void complete_rendezvous(Task& sender, Task& receiver, const std::string& channel,
                           std::uint32_t value, std::int64_t at) {
    emit(at, TraceKind::chan_send, sender.core,
         {{"task", sender.name}, {"channel", channel}, {"value", value}});
    emit(at, TraceKind::chan_recv, receiver.core,
         {{"task", receiver.name}, {"channel", channel}, {"value", value}});
    if (!receiver.pending_bind.empty()) {
      receiver.vars[receiver.pending_bind] = value;
      receiver.pending_bind.clear();
    }
  }

  void exec_slot(Task& t, std::int64_t retire, std::int64_t round_ns) {
    t.busy_ns += round_ns;
    Frame& f = t.frames.back();
    const Stmt& s = (*f.stmts)[f.idx];

    if (std::get_if<Compute>(&s.node)) {
      --t.compute_left;
      ++t.instr;
      if (t.compute_left == 0) {
        emit(retire, TraceKind::instr_block, t.core,
             {{"task", t.name}, {"instructions", t.compute_total}});
        ++f.idx;
      }
      return;
    }
    if (const auto* co = std::get_if<ChanOut>(&s.node)) {
      std::uint32_t v = eval(co->value, t);
      ChannelState& ch = channels.at(co->channel);
      if (!ch.receivers.empty()) {
        Task& r = tasks[ch.receivers.front()];
        ch.receivers.pop_front();
        complete_rendezvous(t, r, co->channel, v, retire);
        r.blocked_ns += retire - r.block_start;
        r.st = Task::St::ready;
        r.wait_note.clear();
        r.frames.back().idx++;
        ++f.idx;
      } else {
        ch.senders.push_back(t.id);
        t.pending_value = v;
        t.st = Task::St::blocked;
        t.wait_note = "chan " + co->channel + " (send)";
        t.block_start = retire;
        wake_blocked_selects(retire);
      }
      return;
    }
    if (const auto* ci = std::get_if<ChanIn>(&s.node)) {
      ChannelState& ch = channels.at(ci->channel);
      if (!ch.senders.empty()) {
        Task& snd = tasks[ch.senders.front()];
        ch.senders.pop_front();
        t.pending_bind = ci->bind;
        complete_rendezvous(snd, t, ci->channel, snd.pending_value, retire);
        snd.blocked_ns += retire - snd.block_start;
        snd.st = Task::St::ready;
        snd.wait_note.clear();
        snd.frames.back().idx++;
        ++f.idx;
      } else {
        ch.receivers.push_back(t.id);
        t.pending_bind = ci->bind;
        t.st = Task::St::blocked;
        t.wait_note = "chan " + ci->channel + " (recv)";
        t.block_start = retire;
      }
      return;
    }
    if (const auto* po = std::get_if<PortOut>(&s.node)) {
      std::uint32_t v = eval(po->value, t);
      ++f.idx;  // before drive_port: select wakeups there can spawn tasks
      drive_port(po->port, v, retire, t.core, false);
      return;
    }
    if (const auto* pi = std::get_if<PortIn>(&s.node)) {
      t.vars[pi->bind] = ports.at(pi->port).value;
      ++f.idx;
      return;
    }
    if (const auto* pa = std::get_if<PortOutAt>(&s.node)) {
      std::int64_t counter = retire / tick_ns;
      if (pa->at_port_ticks <= counter) {
        throw TimestampInPast("port '" + pa->port + "': timestamp " +
                              std::to_string(pa->at_port_ticks) +
                              " not after current counter " +
                              std::to_string(counter));
      }
      Pending p;
      p.t = pa->at_port_ticks * tick_ns;
      p.kind = Pending::Kind::drive;
      p.task = t.id;
      p.port = pa->port;
      p.value = eval(pa->value, t);
      push_pending(std::move(p));
      t.st = Task::St::blocked;
      t.wait_note = "port " + pa->port + " @" + std::to_string(pa->at_port_ticks);
      t.block_start = retire;
      return;
    }
    throw Error("internal: unexpected statement in exec_slot");
  }

  // ------------------------------------------------------- event pumping

  void process_pending_at(std::int64_t t) {
    while (!pending.empty() && pending.top().t <= t) {
      Pending p = pending.top();
      pending.pop();
      switch (p.kind) {
        case Pending::Kind::stimulus:
          drive_port(p.port, p.value, p.t, -1, true);
          break;
        case Pending::Kind::drive: {
          int core;
          {
            Task& task = tasks[p.task];
            core = task.core;
            task.blocked_ns += p.t - task.block_start;
            task.st = Task::St::ready;
            task.wait_note.clear();
            task.frames.back().idx++;
          }
          drive_port(p.port, p.value, p.t, core, false);
          settle(tasks[p.task], p.t);
          break;
        }
        case Pending::Kind::timer_wake: {
          Task& task = tasks[p.task];
          if (task.wake_seq != p.wake_seq || task.st != Task::St::blocked) break;
          if (task.in_select) {
            int idx = ready_case(task, *task.sel, p.t, false);
            if (idx >= 0) fire_select(task, idx, p.t);
          } else {
            // plain timer wait elapsed
            task.blocked_ns += p.t - task.block_start;
            task.st = Task::St::ready;
            task.wait_note.clear();
            ++task.wake_seq;
            task.frames.back().idx++;
            settle(task, p.t);
          }
          break;
        }
      }
    }
  }

  // ------------------------------------------------------------ main run

  std::vector<int> runnable() const {
    std::vector<int> r;
    for (const Task& t : tasks)
      if (t.st == Task::St::ready) r.push_back(t.id);
    std::sort(r.begin(), r.end(), [&](int a, int b) {
      int ca = (tasks[a].core - rr_cursor + spec.core_count) % spec.core_count;
      int cb = (tasks[b].core - rr_cursor + spec.core_count) % spec.core_count;
      return ca < cb;
    });
    return r;
  }

  bool all_done() const {
    for (const Task& t : tasks)
      if (t.st != Task::St::done) return false;
    return true;
  }

  std::vector<std::string> blocked_list() const {
    std::vector<std::string> out;
    for (const Task& t : tasks) {
      if (t.st == Task::St::blocked || t.st == Task::St::join)
        out.push_back(t.name + ": " + t.wait_note);
    }
    return out;
  }

  RunResult run(std::optional<std::int64_t> until) {
    trace.clear();
    RunResult result;
    if (dead) throw DeadlockDetected("simulation already deadlocked");

    if (!started) {
      started = true;
      emit(0, TraceKind::task_start, 0, {{"task", tasks[0].name}});
      settle(tasks[0], 0);
    }

    while (true) {
      if (all_done()) {
        result.outcome = RunOutcome::completed;
        break;
      }
      std::vector<int> r = runnable();
      if (r.empty()) {
        if (pending.empty()) {
          result.outcome = RunOutcome::deadlock;
          result.blocked = blocked_list();
          emit(now, TraceKind::deadlock, -1, {{"blocked", result.blocked}});
          dead = true;
          break;
        }
        std::int64_t tnext = pending.top().t;
        if (until && tnext > *until) {
          now = *until;
          result.outcome = RunOutcome::until_reached;
          break;
        }
        now = std::max(now, tnext);
        process_pending_at(now);
        continue;
      }
      if (until && now >= *until) {
        result.outcome = RunOutcome::until_reached;
        break;
      }
      std::int64_t round_ns = cycle_ns * static_cast<std::int64_t>(r.size());
      std::int64_t t_end = now + round_ns;
      process_pending_at(t_end);  // exact-time drives and wakeups first
      for (int id : r) {
        if (tasks[id].st == Task::St::ready) exec_slot(tasks[id], t_end, round_ns);
      }
      now = t_end;
      rr_cursor = (rr_cursor + 1) % spec.core_count;
      for (std::size_t i = 0; i < tasks.size(); ++i)
        if (tasks[i].st == Task::St::ready) settle(tasks[i], now);
    }

    result.end_ns = now;
    std::stable_sort(trace.begin(), trace.end(),
                     [](const TraceEvent& a, const TraceEvent& b) {
                       return a.t_ns != b.t_ns ? a.t_ns < b.t_ns : a.core < b.core;
                     });
    result.trace = std::move(trace);
    trace.clear();
    return result;
  }
};

Simulator::Simulator(Program program, DeviceSpec spec)
    : impl_(std::make_unique<Impl>()) {
  impl_->program = std::move(program);
  impl_->spec = std::move(spec);
  check_spec(impl_->spec);
  impl_->res_ledger = validate(impl_->program, impl_->spec);
  impl_->cycle_ns = impl_->spec.core_cycle_ns();
  impl_->tick_ns = impl_->spec.port_tick_ns();

  std::set<std::string> used_ports;
  collect_ports(impl_->program.main, used_ports);
  for (const std::string& p : used_ports) {
    auto it = impl_->spec.port_widths.find(p);
    if (it == impl_->spec.port_widths.end())
      throw UnknownPort("device '" + impl_->spec.name + "' has no port '" + p + "'");
    impl_->ports[p] = Impl::PortState{0, 0, it->second};
  }
  for (const std::string& c : impl_->program.channels)
    impl_->channels[c] = Impl::ChannelState{};

  impl_->core_owner.assign(impl_->spec.core_count, -1);
  Impl::Task main_task;
  main_task.id = 0;
  main_task.name = impl_->program.main.name;
  main_task.core = 0;
  main_task.frames.push_back(
      Impl::Frame{&impl_->program.main.statements, 0, 1});
  impl_->tasks.push_back(std::move(main_task));
  impl_->core_owner[0] = 0;
  impl_->cores_in_use = 1;
}

Simulator::~Simulator() = default;

void Simulator::add_stimulus(const std::vector<Stimulus>& stimuli) {
  for (const Stimulus& s : stimuli) {
    if (!impl_->spec.port_widths.count(s.port))
      throw UnknownPort("stimulus references unknown port '" + s.port + "'");
    if (!impl_->ports.count(s.port)) {
      impl_->ports[s.port] =
          Impl::PortState{0, 0, impl_->spec.port_widths.at(s.port)};
    }
    Impl::Pending p;
    p.t = s.at_ns;
    p.kind = Impl::Pending::Kind::stimulus;
    p.port = s.port;
    p.value = s.value;
    impl_->push_pending(std::move(p));
  }
}

RunResult Simulator::run(std::optional<std::int64_t> until_ns) {
  return impl_->run(until_ns);
}

SimState Simulator::state() const {
  SimState s;
  s.now_ns = impl_->now;
  s.rr_cursor = impl_->rr_cursor;
  s.cores.assign(impl_->spec.core_count, "idle");
  for (int c = 0; c < impl_->spec.core_count; ++c) {
    int owner = impl_->core_owner[c];
    if (owner < 0) continue;
    const auto& t = impl_->tasks[owner];
    switch (t.st) {
      case Impl::Task::St::ready:
        s.cores[c] = "running " + t.name;
        break;
      case Impl::Task::St::blocked:
      case Impl::Task::St::join:
        s.cores[c] = "blocked " + t.name + " (" + t.wait_note + ")";
        break;
      case Impl::Task::St::done:
        s.cores[c] = "idle";
        break;
    }
  }
  for (const auto& [name, ps] : impl_->ports) {
    s.port_values[name] = ps.value;
    s.port_counters[name] = impl_->now / impl_->tick_ns;
  }
  for (const std::string& t : impl_->timers_seen)
    s.timer_values[t] = impl_->now / impl_->tick_ns;
  for (const auto& [name, ch] : impl_->channels) {
    if (!ch.senders.empty())
      s.pending_rendezvous[name] = impl_->tasks[ch.senders.front()].name;
    else if (!ch.receivers.empty())
      s.pending_rendezvous[name] = impl_->tasks[ch.receivers.front()].name;
  }
  return s;
}

const ResourceLedger& Simulator::ledger() const { return impl_->res_ledger; }

RunResult simulate(const Program& program, const DeviceSpec& spec,
                   const std::vector<Stimulus>& stimuli,
                   std::optional<std::int64_t> until_ns) {
  Simulator sim(program, spec);
  sim.add_stimulus(stimuli);
  return sim.run(until_ns);
}

std::vector<Stimulus> parse_stimulus(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("stimulus: ") + e.what());
  }
  std::vector<Stimulus> out;
  for (const nlohmann::json& entry : j) {
    Stimulus s;
    s.at_ns = entry.at("at_ns").get<std::int64_t>();
    s.port = entry.at("port").get<std::string>();
    s.value = entry.at("value").get<std::uint32_t>();
    if (s.at_ns < 0) throw ParseError("stimulus: negative time");
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Stimulus> load_stimulus_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open stimulus file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_stimulus(ss.str());
}

}  // namespace xsim
