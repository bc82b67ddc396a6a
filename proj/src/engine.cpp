// Copyright 2026 The consolidsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <consolidsim/engine.hpp>

#include <consolidsim/cluster.hpp>
#include <consolidsim/policies.hpp>
#include <consolidsim/scheduler.hpp>

#include <algorithm>
#include <ostream>
#include <queue>
#include <string>
#include <tuple>
#include <unordered_map>

namespace consolidsim::engine {

using cluster::ClusterState;
using cluster::Target;
using metrics::JobOutcome;
using metrics::JobState;
using policies::DecisionKind;

const char* to_string(EventKind kind)
{
    switch (kind) {
    case EventKind::JobFinish:
        return "JobFinish";
    case EventKind::DemandChange:
        return "DemandChange";
    case EventKind::ReallocationReady:
        return "ReallocationReady";
    case EventKind::JobSubmit:
        return "JobSubmit";
    }
    return "?";
}

bool fires_before(const SimEvent& a, const SimEvent& b)
{
    return std::tie(a.time, a.kind, a.seq) < std::tie(b.time, b.kind, b.seq);
}

SimConfig SimConfig::dynamic(int total_nodes)
{
    SimConfig c;
    c.total_nodes = total_nodes;
    c.mode = Mode::Dynamic;
    return c;
}

SimConfig SimConfig::split(int st_nodes, int ws_nodes)
{
    SimConfig c;
    c.total_nodes = st_nodes + ws_nodes;
    c.mode = Mode::Static;
    c.st_nodes = st_nodes;
    c.ws_nodes = ws_nodes;
    return c;
}

void SimConfig::validate() const
{
    if (total_nodes <= 0)
        throw std::invalid_argument("total_nodes must be > 0");
    if (!(realloc_delay >= 0))
        throw std::invalid_argument("realloc_delay must be >= 0");
    if (mode == Mode::Static
        && (st_nodes < 0 || ws_nodes < 0 || st_nodes + ws_nodes != total_nodes))
        throw std::invalid_argument("static split " + std::to_string(st_nodes) + "+"
                                    + std::to_string(ws_nodes) + " does not add up to "
                                    + std::to_string(total_nodes));
}

int max_job_nodes(const SimConfig& cfg, const traces::DemandSeries& demand)
{
    if (cfg.mode == Mode::Static)
        return cfg.st_nodes;
    const int floor = cfg.horizon ? demand.trough() : demand.final_demand();
    return std::max(0, cfg.total_nodes - floor);
}

namespace {

struct Later {
    bool operator()(const SimEvent& a, const SimEvent& b) const { return fires_before(b, a); }
};

class Simulation {
public:
    Simulation(const std::vector<traces::JobRecord>& jobs, const traces::DemandSeries& demand,
               const SimConfig& cfg, std::ostream* log)
        : cfg_(cfg)
        , demand_(demand)
        , log_(log)
        , state_(ClusterState::fresh(cfg.total_nodes))
    {
        const int widest = max_job_nodes(cfg, demand);
        outcomes_.reserve(jobs.size());
        for (const auto& j : jobs) {
            if (j.requested_nodes < 1 || !(j.runtime > 0) || j.submit_time < 0)
                throw std::invalid_argument("job " + std::to_string(j.job_id) + " is malformed");
            if (j.requested_nodes > widest)
                throw std::invalid_argument("job " + std::to_string(j.job_id) + " needs "
                                            + std::to_string(j.requested_nodes)
                                            + " nodes, configuration can run at most "
                                            + std::to_string(widest));
            if (!index_.emplace(j.job_id, outcomes_.size()).second)
                throw std::invalid_argument("duplicate job id " + std::to_string(j.job_id));
            JobOutcome o;
            o.job_id = j.job_id;
            o.size = j.requested_nodes;
            o.submit = j.submit_time;
            o.runtime = j.runtime;
            outcomes_.push_back(o);
        }
        std::vector<const JobOutcome*> by_submit;
        for (const auto& o : outcomes_)
            by_submit.push_back(&o);
        std::sort(by_submit.begin(), by_submit.end(), [](const JobOutcome* a, const JobOutcome* b) {
            return std::tie(a->submit, a->job_id) < std::tie(b->submit, b->job_id);
        });
        for (const auto* o : by_submit)
            push(o->submit, EventKind::JobSubmit, o->job_id);
        for (const auto& s : demand.samples)
            push(s.timestamp, EventKind::DemandChange, s.demand);

        if (cfg.mode == Mode::Static)
            cluster::allocate(state_, Target::ST, cfg.st_nodes);
    }

    metrics::RunReport run()
    {
        while (!events_.empty()) {
            const SimTime t = events_.top().time;
            now_ = t;
            while (!events_.empty() && events_.top().time == t) {
                const auto ev = events_.top();
                events_.pop();
                dispatch(ev);
                check("after " + std::string(to_string(ev.kind)));
            }
            settle();
        }

        if (!state_.st_busy.empty() || (!queue_.empty() && !cfg_.horizon))
            throw InvariantViolation("simulation ended with jobs still queued or running");

        metrics::RunContext ctx;
        ctx.config_size = cfg_.total_nodes;
        ctx.mode = cfg_.mode;
        ctx.ws_capacity = cfg_.mode == Mode::Static ? cfg_.ws_nodes : cfg_.total_nodes;
        ctx.horizon = cfg_.horizon;
        ctx.end_time = std::max(demand_.duration, now_);
        ctx.trace_hash = trace_hash_;

        std::vector<metrics::WsPoint> ws_series;
        for (const auto& p : util_)
            if (ws_series.empty() || ws_series.back().held != p.ws_held)
                ws_series.push_back({p.time, p.ws_held});
        return metrics::finalize(std::move(outcomes_), ws_series, std::move(util_), demand_, ctx);
    }

    void set_trace_hash(std::uint64_t h) { trace_hash_ = h; }

private:
    void push(SimTime time, EventKind kind, std::int64_t payload)
    {
        events_.push(SimEvent{time, kind, seq_++, payload});
    }

    void log(const SimEvent& ev, const std::string& payload)
    {
        if (log_)
            *log_ << format_number(ev.time) << '\t' << to_string(ev.kind) << '\t' << payload
                  << '\n';
    }

    void check(const std::string& where)
    {
        if (cfg_.check_invariants && !cluster::conservation_check(state_, now_))
            throw InvariantViolation("node partition broken " + where + " at t="
                                     + format_number(now_));
    }

    JobOutcome& outcome(JobId id) { return outcomes_[index_.at(id)]; }

    void dispatch(const SimEvent& ev)
    {
        switch (ev.kind) {
        case EventKind::JobFinish: {
            auto& o = outcome(ev.payload);
            if (o.state != JobState::Running) {
                log(ev, "job=" + std::to_string(ev.payload) + " stale");
                return;
            }
            cluster::release_job(state_, o.job_id);
            o.state = JobState::Completed;
            o.end = now_;
            log(ev, "job=" + std::to_string(ev.payload));
            break;
        }
        case EventKind::DemandChange:
            log(ev, "demand=" + std::to_string(ev.payload));
            ws_demand_ = static_cast<int>(ev.payload);
            if (cfg_.mode == Mode::Static)
                adjust_static_ws();
            else
                adjust_dynamic_ws();
            break;
        case EventKind::ReallocationReady: {
            const auto landed = cluster::complete_transit(state_, static_cast<std::uint64_t>(ev.payload));
            log(ev, "batch=" + std::to_string(ev.payload) + " nodes=" + std::to_string(landed.size()));
            break;
        }
        case EventKind::JobSubmit: {
            const auto& o = outcome(ev.payload);
            queue_.enqueue({o.job_id, o.size, o.runtime, o.submit});
            log(ev, "job=" + std::to_string(ev.payload) + " size=" + std::to_string(o.size));
            break;
        }
        }
    }

    void adjust_static_ws()
    {
        const int target = std::min(ws_demand_, cfg_.ws_nodes);
        const int held = static_cast<int>(state_.ws_held.size());
        if (target > held)
            cluster::allocate(state_, Target::WS, target - held);
        else if (target < held)
            cluster::release_to_idle(state_, Target::WS, held - target);
    }

    void adjust_dynamic_ws()
    {
        const int held = static_cast<int>(state_.ws_held.size()) + state_.in_transit_count();
        const auto decision = policies::ws_adjust(held, ws_demand_);
        if (decision.is_noop())
            return;

        if (decision.kind == DecisionKind::ReleaseToProvisioner) {
            // Nodes still in transit are not serving yet; give those back first.
            const int cancelled = cluster::cancel_transit(state_, decision.node_count);
            cluster::release_to_idle(state_, Target::WS, decision.node_count - cancelled);
            return;
        }

        const int idle = static_cast<int>(state_.idle.size());
        for (const auto& d : policies::provision_on_ws_claim(decision.node_count, idle)) {
            if (d.kind == DecisionKind::GrantToWS)
                cluster::allocate(state_, Target::WS, d.node_count);
            else if (d.kind == DecisionKind::ReclaimFromST)
                apply_reclaim(policies::ReclaimOrder{d.node_count, cfg_.realloc_delay});
        }
    }

    void apply_reclaim(const policies::ReclaimOrder& order)
    {
        std::vector<policies::RunningJobView> running;
        int holdings = static_cast<int>(state_.st_free.size());
        for (const auto& [id, nodes] : state_.st_busy) {
            const auto& o = outcome(id);
            running.push_back({id, o.size, now_ - *o.start});
            holdings += o.size;
        }
        // Demand beyond what the batch tier holds stays unmet.
        const int demanded = std::min(order.demanded, holdings);
        if (demanded < 1)
            return;

        for (const auto& d : policies::st_release_plan(demanded, static_cast<int>(state_.st_free.size()), running)) {
            if (d.kind == DecisionKind::KillJobs) {
                for (JobId victim : d.victim_jobs) {
                    cluster::release_job(state_, victim);
                    auto& o = outcome(victim);
                    o.state = JobState::Killed;
                    o.end = now_;
                    if (log_)
                        *log_ << format_number(now_) << "\tKill\tjob=" << victim << '\n';
                }
            } else if (d.kind == DecisionKind::ReleaseToProvisioner) {
                const auto batch = cluster::begin_transit(state_, d.node_count, now_ + order.deadline_hint);
                if (order.deadline_hint > 0)
                    push(now_ + order.deadline_hint, EventKind::ReallocationReady,
                         static_cast<std::int64_t>(batch));
                else
                    cluster::complete_transit(state_, batch);
            }
        }
    }

    void settle()
    {
        if (cfg_.mode == Mode::Dynamic) {
            const auto grant = policies::provision_on_idle(static_cast<int>(state_.idle.size()));
            cluster::allocate(state_, Target::ST, grant.node_count);
        }

        const auto selected = scheduler::schedule_pass(queue_, static_cast<int>(state_.st_free.size()),
                                                       cfg_.strict_fifo);
        for (JobId id : selected) {
            cluster::bind_job(state_, id, outcome(id).size);
            auto& o = outcome(id);
            o.state = JobState::Running;
            o.start = now_;
            push(now_ + o.runtime, EventKind::JobFinish, id);
            if (log_)
                *log_ << format_number(now_) << "\tStart\tjob=" << id << '\n';
        }
        queue_.dequeue_selected(selected);
        check("after settle");

        metrics::UtilPoint p;
        p.time = now_;
        p.st_busy = state_.st_busy_count();
        p.ws_held = static_cast<int>(state_.ws_held.size());
        p.idle = cfg_.total_nodes - p.st_busy - p.ws_held;
        if (util_.empty() || util_.back().st_busy != p.st_busy || util_.back().ws_held != p.ws_held)
            util_.push_back(p);
    }

    SimConfig cfg_;
    const traces::DemandSeries& demand_;
    std::ostream* log_;
    ClusterState state_;
    scheduler::JobQueue queue_;
    std::vector<JobOutcome> outcomes_;
    std::unordered_map<JobId, std::size_t> index_;
    std::priority_queue<SimEvent, std::vector<SimEvent>, Later> events_;
    std::uint64_t seq_ = 0;
    SimTime now_ = 0;
    int ws_demand_ = 0;
    std::vector<metrics::UtilPoint> util_;
    std::uint64_t trace_hash_ = 0;
};

} // namespace

metrics::RunReport run(const std::vector<traces::JobRecord>& jobs,
                       const traces::DemandSeries& demand, const SimConfig& cfg,
                       std::ostream* event_log)
{
    cfg.validate();
    if (demand.samples.empty())
        throw std::invalid_argument("demand series is empty");
    Simulation sim(jobs, demand, cfg, event_log);
    sim.set_trace_hash(traces::trace_digest(jobs, demand));
    return sim.run();
}

} // namespace consolidsim::engine
