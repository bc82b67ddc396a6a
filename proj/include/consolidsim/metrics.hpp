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
 * \file consolidsim/metrics.hpp
 *
 * \brief Benefit and cost measures of a simulation run.
 *
 * Cost is the cluster size. Batch-side benefit is the number of completed
 * jobs and the reciprocal of the mean turnaround (completion minus
 * submission, completed jobs only). Web-side benefit is reported as the
 * fraction of demanded node-seconds actually held.
 */

#ifndef CONSOLIDSIM_METRICS_HPP
#define CONSOLIDSIM_METRICS_HPP

#include <consolidsim/traces.hpp>
#include <consolidsim/types.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace consolidsim::metrics {

enum class JobState { Queued, Running, Completed, Killed };

const char* to_string(JobState s);

struct JobOutcome {
    JobId job_id = 0;
    int size = 1;
    SimTime submit = 0;
    SimTime runtime = 0;
    std::optional<SimTime> start;
    std::optional<SimTime> end;
    JobState state = JobState::Queued;

    bool operator==(const JobOutcome&) const = default;
};

/// Web-tier holdings step function: `held` applies from `time` on.
struct WsPoint {
    SimTime time = 0;
    int held = 0;

    bool operator==(const WsPoint&) const = default;
};

struct UtilPoint {
    SimTime time = 0;
    int st_busy = 0;
    int ws_held = 0;
    /// Everything else: provisioner idle, free batch nodes, in transit.
    int idle = 0;

    bool operator==(const UtilPoint&) const = default;
};

struct RunContext {
    int config_size = 0;
    Mode mode = Mode::Dynamic;
    /// Nodes the web tier could hold at most (whole cluster when dynamic).
    int ws_capacity = 0;
    /// Completions and kills after this instant are not counted. Unset
    /// counts every outcome.
    std::optional<SimTime> horizon;
    /// End of the integration interval for the web-tier measures.
    SimTime end_time = 0;
    std::uint64_t trace_hash = 0;
};

struct RunReport {
    int config_size = 0;
    Mode mode = Mode::Dynamic;
    std::optional<SimTime> horizon;
    std::uint64_t trace_hash = 0;

    int submitted_count = 0;
    int completed_count = 0;
    int killed_count = 0;
    /// Jobs neither completed nor killed by the horizon.
    int unfinished_count = 0;
    /// Completions over the whole run, horizon ignored.
    int completed_total = 0;

    std::optional<double> mean_turnaround;
    std::optional<double> turnaround_reciprocal;

    double ws_demand_satisfaction = 1.0;
    double unmet_demand_integral = 0;
    /// Part of the unmet integral where demand exceeded ws_capacity.
    double infeasible_demand_integral = 0;
    SimTime end_time = 0;

    std::vector<UtilPoint> utilization_series;
    std::vector<JobOutcome> job_outcomes;

    bool operator==(const RunReport&) const = default;
};

RunReport finalize(std::vector<JobOutcome> job_outcomes, const std::vector<WsPoint>& ws_series,
                   std::vector<UtilPoint> utilization, const traces::DemandSeries& demand,
                   const RunContext& ctx);

struct ComparisonRow {
    int config_size = 0;
    Mode mode = Mode::Dynamic;
    bool baseline = false;
    int completed_count = 0;
    int killed_count = 0;
    std::optional<double> mean_turnaround;
    std::optional<double> turnaround_reciprocal;
    double ws_demand_satisfaction = 1.0;
    double cost_ratio = 1.0;
    int delta_completed = 0;
    std::optional<double> delta_mean_turnaround;
};

struct Comparison {
    int baseline_size = 0;
    std::vector<ComparisonRow> rows;
};

/// Tabulate runs against a baseline: the first static run if any, else the
/// largest configuration. Rows are ordered static first, then by size
/// descending. Throws IncomparableRunsError if the runs used different
/// traces.
Comparison compare(std::span<const RunReport> reports);

void write_report_csv(std::ostream& out, std::span<const RunReport> reports);
std::string report_to_json(const RunReport& report);
void write_utilization_csv(std::ostream& out, const RunReport& report);
void write_outcomes_csv(std::ostream& out, const RunReport& report);
void write_comparison_csv(std::ostream& out, const Comparison& cmp);

} // namespace consolidsim::metrics

#endif // CONSOLIDSIM_METRICS_HPP
