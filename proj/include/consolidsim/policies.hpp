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

/**
 * \file consolidsim/policies.hpp
 *
 * \brief Cooperative provisioning and management rules as pure decision
 *  functions.
 *
 * Provisioner: web-tier demand outranks batch demand; idle nodes all go to
 * the batch tier; a web claim that idle nodes cannot cover forces the batch
 * tier to return the remainder.
 *
 * Batch tier: hands back free nodes first, then kills running jobs smallest
 * first (ties broken by shortest elapsed time, then job id) until enough
 * nodes are free.
 *
 * Web tier: returns surplus nodes at once and claims any shortfall.
 */

#ifndef CONSOLIDSIM_POLICIES_HPP
#define CONSOLIDSIM_POLICIES_HPP

#include <consolidsim/types.hpp>

#include <iosfwd>
#include <vector>

namespace consolidsim::policies {

struct RunningJobView {
    JobId job_id = 0;
    int size = 1;
    SimTime elapsed = 0;

    bool operator==(const RunningJobView&) const = default;
};

struct ReclaimOrder {
    int demanded = 1;
    SimTime deadline_hint = 0;
};

enum class DecisionKind { GrantIdleToST, ReclaimFromST, GrantToWS, ReleaseToProvisioner, KillJobs };

const char* to_string(DecisionKind kind);

struct PolicyDecision {
    DecisionKind kind = DecisionKind::GrantIdleToST;
    int node_count = 0;
    /// Victims in kill order; KillJobs only.
    std::vector<JobId> victim_jobs;

    bool is_noop() const { return node_count == 0 && victim_jobs.empty(); }
    bool operator==(const PolicyDecision&) const = default;
};

std::ostream& operator<<(std::ostream& os, const PolicyDecision& d);

PolicyDecision provision_on_idle(int idle_count);

/// Split a web-tier claim into an immediate idle grant and a forced reclaim
/// from the batch tier.
std::vector<PolicyDecision> provision_on_ws_claim(int claim, int idle_count);

/// Ascending by (size, elapsed, job_id).
bool kill_before(const RunningJobView& a, const RunningJobView& b);

std::vector<RunningJobView> kill_order(std::vector<RunningJobView> running);

/// Release `demand` nodes from the batch tier. Returns
/// [ReleaseToProvisioner] when free nodes suffice, otherwise
/// [KillJobs, ReleaseToProvisioner]. Surplus freed by the last victim stays
/// with the batch tier. Throws InfeasibleReclaimError when even killing
/// every job cannot cover the demand.
std::vector<PolicyDecision> st_release_plan(int demand, int st_free,
                                            const std::vector<RunningJobView>& running);

/// Web tier adjustment toward a new demand: ReleaseToProvisioner for
/// surplus, GrantToWS for a claim, a zero-count GrantToWS when balanced.
PolicyDecision ws_adjust(int current_held, int new_demand);

} // namespace consolidsim::policies

#endif // CONSOLIDSIM_POLICIES_HPP
