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
 * \file consolidsim/cluster.hpp
 *
 * \brief The shared node pool and its partition between the provisioner,
 *  the batch (ST) tier and the web (WS) tier.
 */

#ifndef CONSOLIDSIM_CLUSTER_HPP
#define CONSOLIDSIM_CLUSTER_HPP

#include <consolidsim/types.hpp>

#include <map>
#include <optional>
#include <set>
#include <vector>

namespace consolidsim::cluster {

using NodeSet = std::set<NodeId>;

enum class Target { ST, WS };

struct Transit {
    NodeSet nodes;
    SimTime ready_time = 0;
    std::uint64_t batch = 0;
};

/// Every node id in [0, total_nodes) lives in exactly one of: idle, st_free,
/// one st_busy entry, ws_held, or one in_transit batch.
struct ClusterState {
    int total_nodes = 0;
    NodeSet idle;
    NodeSet st_free;
    std::map<JobId, NodeSet> st_busy;
    NodeSet ws_held;
    /// Reclaimed nodes on their way to the web tier, in creation order.
    std::vector<Transit> in_transit;
    std::uint64_t next_batch = 0;

    /// All nodes idle.
    static ClusterState fresh(int total_nodes);

    int st_busy_count() const;
    int in_transit_count() const;
};

/// Move `count` nodes (lowest ids first) from idle to the target tier.
NodeSet allocate(ClusterState& state, Target target, int count);

/// Move `count` nodes from a tier back to idle (highest ids first).
NodeSet release_to_idle(ClusterState& state, Target from, int count);

NodeSet bind_job(ClusterState& state, JobId job, int count);
NodeSet release_job(ClusterState& state, JobId job);

/// Move `count` free ST nodes into a new in-transit batch bound for the web
/// tier and return its batch id.
std::uint64_t begin_transit(ClusterState& state, int count, SimTime ready_time);

/// Land whatever is left of a batch in ws_held. A batch fully cancelled
/// earlier lands nothing.
NodeSet complete_transit(ClusterState& state, std::uint64_t batch);

/// Return up to `count` in-transit nodes to idle, most recent batch first.
/// Returns the number cancelled.
int cancel_transit(ClusterState& state, int count);

/// True iff the partition invariant holds (and, when `now` is given, no
/// batch is overdue).
bool conservation_check(const ClusterState& state, std::optional<SimTime> now = std::nullopt);

} // namespace consolidsim::cluster

#endif // CONSOLIDSIM_CLUSTER_HPP
