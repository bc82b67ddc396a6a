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
 * \file consolidsim/engine.hpp
 *
 * \brief Discrete-event core that replays a batch job stream and a web
 *  demand series against one cluster configuration.
 *
 * Events sharing a timestamp run in the order JobFinish, DemandChange,
 * ReallocationReady, JobSubmit, then by insertion. Once every event at a
 * timestamp has run, the engine settles: in dynamic mode idle nodes go to
 * the batch tier, then one First-Fit pass starts whatever fits. Nodes freed
 * by a job finishing at the same instant as a demand rise are therefore
 * still available to the web claim.
 *
 * Static mode keeps two isolated pools. Dynamic mode applies the cooperative
 * policies: web claims take idle nodes first and force the batch tier to
 * return the rest, killing jobs in kill order if needed. Reclaimed nodes
 * reach the web tier after `realloc_delay`; killed jobs leave the system.
 */

#ifndef CONSOLIDSIM_ENGINE_HPP
#define CONSOLIDSIM_ENGINE_HPP

#include <consolidsim/metrics.hpp>
#include <consolidsim/traces.hpp>
#include <consolidsim/types.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

namespace consolidsim::engine {

enum class EventKind : std::uint8_t { JobFinish = 0, DemandChange = 1, ReallocationReady = 2, JobSubmit = 3 };

const char* to_string(EventKind kind);

struct SimEvent {
    SimTime time = 0;
    EventKind kind = EventKind::JobSubmit;
    std::uint64_t seq = 0;
    /// Job id, demand value or transit batch id depending on kind.
    std::int64_t payload = 0;
};

/// Strict weak order giving the processing order of events.
bool fires_before(const SimEvent& a, const SimEvent& b);

struct SimConfig {
    int total_nodes = 0;
    Mode mode = Mode::Dynamic;
    /// Static mode only; must add up to total_nodes.
    int st_nodes = 0;
    int ws_nodes = 0;
    SimTime realloc_delay = 5.0;
    bool strict_fifo = false;
    /// Count completions only up to this instant (the experiment window).
    std::optional<SimTime> horizon;
    /// Check the node partition after every event.
    bool check_invariants = true;

    static SimConfig dynamic(int total_nodes);
    static SimConfig split(int st_nodes, int ws_nodes);

    void validate() const;
};

/// Widest job the configuration accepts: the batch pool when static,
/// otherwise the cluster less the demand that persists after the series
/// ends. With a horizon the lowest demand is used instead, and jobs that
/// never find room stay queued and count as unfinished.
int max_job_nodes(const SimConfig& cfg, const traces::DemandSeries& demand);

/// Run one simulation. Jobs wider than max_job_nodes are rejected with
/// std::invalid_argument; filter them with traces::reject_oversized first.
/// When `event_log` is set, one `time\tkind\tpayload` line is written per
/// event.
metrics::RunReport run(const std::vector<traces::JobRecord>& jobs,
                       const traces::DemandSeries& demand, const SimConfig& cfg,
                       std::ostream* event_log = nullptr);

} // namespace consolidsim::engine

#endif // CONSOLIDSIM_ENGINE_HPP
