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

#include <consolidsim/policies.hpp>

#include <algorithm>
#include <ostream>
#include <string>
#include <tuple>

namespace consolidsim::policies {

const char* to_string(DecisionKind kind)
{
    switch (kind) {
    case DecisionKind::GrantIdleToST:
        return "GrantIdleToST";
    case DecisionKind::ReclaimFromST:
        return "ReclaimFromST";
    case DecisionKind::GrantToWS:
        return "GrantToWS";
    case DecisionKind::ReleaseToProvisioner:
        return "ReleaseToProvisioner";
    case DecisionKind::KillJobs:
        return "KillJobs";
    }
    return "?";
}

std::ostream& operator<<(std::ostream& os, const PolicyDecision& d)
{
    os << to_string(d.kind) << '(' << d.node_count;
    for (auto j : d.victim_jobs)
        os << ' ' << j;
    return os << ')';
}

PolicyDecision provision_on_idle(int idle_count)
{
    if (idle_count < 0)
        throw std::invalid_argument("provision_on_idle: negative idle count");
    return {DecisionKind::GrantIdleToST, idle_count, {}};
}

std::vector<PolicyDecision> provision_on_ws_claim(int claim, int idle_count)
{
    if (claim < 1)
        throw std::invalid_argument("provision_on_ws_claim: claim must be >= 1");
    if (idle_count < 0)
        throw std::invalid_argument("provision_on_ws_claim: negative idle count");
    std::vector<PolicyDecision> out;
    const int grant = std::min(claim, idle_count);
    if (grant > 0)
        out.push_back({DecisionKind::GrantToWS, grant, {}});
    if (claim > idle_count)
        out.push_back({DecisionKind::ReclaimFromST, claim - idle_count, {}});
    return out;
}

bool kill_before(const RunningJobView& a, const RunningJobView& b)
{
    return std::tie(a.size, a.elapsed, a.job_id) < std::tie(b.size, b.elapsed, b.job_id);
}

std::vector<RunningJobView> kill_order(std::vector<RunningJobView> running)
{
    std::stable_sort(running.begin(), running.end(), kill_before);
    return running;
}

std::vector<PolicyDecision> st_release_plan(int demand, int st_free,
                                            const std::vector<RunningJobView>& running)
{
    if (demand < 1)
        throw std::invalid_argument("st_release_plan: demand must be >= 1");
    if (st_free < 0)
        throw std::invalid_argument("st_release_plan: negative free count");

    const PolicyDecision release{DecisionKind::ReleaseToProvisioner, demand, {}};
    if (st_free >= demand)
        return {release};

    long total = st_free;
    for (const auto& j : running)
        total += j.size;
    if (total < demand)
        throw InfeasibleReclaimError("st_release_plan: demand " + std::to_string(demand)
                                     + " exceeds batch holdings " + std::to_string(total));

    PolicyDecision kill{DecisionKind::KillJobs, 0, {}};
    int available = st_free;
    for (const auto& j : kill_order(running)) {
        if (available >= demand)
            break;
        kill.victim_jobs.push_back(j.job_id);
        kill.node_count += j.size;
        available += j.size;
    }
    return {std::move(kill), release};
}

PolicyDecision ws_adjust(int current_held, int new_demand)
{
    if (new_demand < 1)
        throw std::invalid_argument("ws_adjust: demand must be >= 1");
    if (current_held < 0)
        throw std::invalid_argument("ws_adjust: negative holdings");
    if (current_held > new_demand)
        return {DecisionKind::ReleaseToProvisioner, current_held - new_demand, {}};
    return {DecisionKind::GrantToWS, new_demand - current_held, {}};
}

} // namespace consolidsim::policies
