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

#include <consolidsim/cluster.hpp>

#include <algorithm>
#include <string>

namespace consolidsim::cluster {

namespace {

NodeSet take_lowest(NodeSet& from, int count)
{
    NodeSet out;
    auto it = from.begin();
    for (int i = 0; i < count; ++i)
        out.insert(out.end(), *it++);
    from.erase(from.begin(), it);
    return out;
}

NodeSet take_highest(NodeSet& from, int count)
{
    NodeSet out;
    for (int i = 0; i < count; ++i) {
        auto last = std::prev(from.end());
        out.insert(*last);
        from.erase(last);
    }
    return out;
}

NodeSet& tier(ClusterState& state, Target t)
{
    return t == Target::ST ? state.st_free : state.ws_held;
}

} // namespace

ClusterState ClusterState::fresh(int total_nodes)
{
    if (total_nodes <= 0)
        throw std::invalid_argument("total_nodes must be > 0");
    ClusterState s;
    s.total_nodes = total_nodes;
    for (NodeId n = 0; n < total_nodes; ++n)
        s.idle.insert(s.idle.end(), n);
    return s;
}

int ClusterState::st_busy_count() const
{
    int n = 0;
    for (const auto& [job, nodes] : st_busy)
        n += static_cast<int>(nodes.size());
    return n;
}

int ClusterState::in_transit_count() const
{
    int n = 0;
    for (const auto& t : in_transit)
        n += static_cast<int>(t.nodes.size());
    return n;
}

NodeSet allocate(ClusterState& state, Target target, int count)
{
    if (count < 0)
        throw std::invalid_argument("allocate: negative count");
    if (count > static_cast<int>(state.idle.size()))
        throw InsufficientIdleError("allocate: requested " + std::to_string(count) + " nodes, "
                                    + std::to_string(state.idle.size()) + " idle");
    auto moved = take_lowest(state.idle, count);
    tier(state, target).insert(moved.begin(), moved.end());
    return moved;
}

NodeSet release_to_idle(ClusterState& state, Target from, int count)
{
    auto& src = tier(state, from);
    if (count < 0 || count > static_cast<int>(src.size()))
        throw std::invalid_argument("release_to_idle: count exceeds holdings");
    auto moved = take_highest(src, count);
    state.idle.insert(moved.begin(), moved.end());
    return moved;
}

NodeSet bind_job(ClusterState& state, JobId job, int count)
{
    if (count < 1)
        throw std::invalid_argument("bind_job: count must be >= 1");
    if (state.st_busy.count(job))
        throw InvariantViolation("bind_job: job " + std::to_string(job) + " already bound");
    if (count > static_cast<int>(state.st_free.size()))
        throw InsufficientIdleError("bind_job: job " + std::to_string(job) + " needs "
                                    + std::to_string(count) + " nodes, "
                                    + std::to_string(state.st_free.size()) + " free");
    auto nodes = take_lowest(state.st_free, count);
    state.st_busy.emplace(job, nodes);
    return nodes;
}

NodeSet release_job(ClusterState& state, JobId job)
{
    auto it = state.st_busy.find(job);
    if (it == state.st_busy.end())
        throw NotFoundError("release_job: job " + std::to_string(job) + " not bound");
    auto nodes = std::move(it->second);
    state.st_busy.erase(it);
    state.st_free.insert(nodes.begin(), nodes.end());
    return nodes;
}

std::uint64_t begin_transit(ClusterState& state, int count, SimTime ready_time)
{
    if (count < 1 || count > static_cast<int>(state.st_free.size()))
        throw std::invalid_argument("begin_transit: count exceeds free ST nodes");
    Transit t;
    t.nodes = take_lowest(state.st_free, count);
    t.ready_time = ready_time;
    t.batch = state.next_batch++;
    state.in_transit.push_back(std::move(t));
    return state.in_transit.back().batch;
}

NodeSet complete_transit(ClusterState& state, std::uint64_t batch)
{
    auto it = std::find_if(state.in_transit.begin(), state.in_transit.end(),
                           [batch](const Transit& t) { return t.batch == batch; });
    if (it == state.in_transit.end())
        return {};
    auto nodes = std::move(it->nodes);
    state.in_transit.erase(it);
    state.ws_held.insert(nodes.begin(), nodes.end());
    return nodes;
}

int cancel_transit(ClusterState& state, int count)
{
    int cancelled = 0;
    while (cancelled < count && !state.in_transit.empty()) {
        auto& last = state.in_transit.back();
        const int take = std::min(count - cancelled, static_cast<int>(last.nodes.size()));
        auto moved = take_highest(last.nodes, take);
        state.idle.insert(moved.begin(), moved.end());
        cancelled += take;
        if (last.nodes.empty())
            state.in_transit.pop_back();
    }
    return cancelled;
}

bool conservation_check(const ClusterState& state, std::optional<SimTime> now)
{
    if (state.total_nodes <= 0)
        return false;
    std::vector<char> seen(static_cast<std::size_t>(state.total_nodes), 0);
    std::size_t count = 0;
    auto visit = [&](const NodeSet& nodes) {
        for (NodeId n : nodes) {
            if (n < 0 || n >= state.total_nodes || seen[static_cast<std::size_t>(n)])
                return false;
            seen[static_cast<std::size_t>(n)] = 1;
            ++count;
        }
        return true;
    };

    if (!visit(state.idle) || !visit(state.st_free) || !visit(state.ws_held))
        return false;
    for (const auto& [job, nodes] : state.st_busy)
        if (nodes.empty() || !visit(nodes))
            return false;
    for (const auto& t : state.in_transit) {
        if (t.nodes.empty() || !visit(t.nodes))
            return false;
        if (now && t.ready_time < *now)
            return false;
    }
    return count == static_cast<std::size_t>(state.total_nodes);
}

} // namespace consolidsim::cluster
