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
 * \file consolidsim/traces.hpp
 *
 * \brief Workload trace ingestion: SWF job logs, request-rate series and
 *  web-tier demand series.
 */

#ifndef CONSOLIDSIM_TRACES_HPP
#define CONSOLIDSIM_TRACES_HPP

#include <consolidsim/types.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace consolidsim::traces {

/// SDSC BLUE has 8 processors per node.
inline constexpr int kDefaultProcsPerNode = 8;

/// Two weeks, the experiment window length.
inline constexpr SimTime kTwoWeeks = 14.0 * 24 * 3600;

struct JobRecord {
    JobId job_id = 0;
    SimTime submit_time = 0;
    SimTime runtime = 0;
    int requested_procs = 0;
    int requested_nodes = 0;

    bool operator==(const JobRecord&) const = default;
};

/// Result of parsing an SWF log.
struct SwfTrace {
    std::vector<JobRecord> jobs;
    /// Lines dropped because run time or processor count was not positive.
    std::size_t skipped = 0;
    /// `UnixStartTime` from the header comments, if present.
    std::optional<std::int64_t> unix_start_time;
    /// Original (trace-relative) submit time of the earliest retained job;
    /// every JobRecord::submit_time has had this subtracted.
    SimTime rebase_offset = 0;
};

struct RequestSample {
    SimTime timestamp = 0;
    double rate = 0;

    bool operator==(const RequestSample&) const = default;
};

struct RequestSeries {
    std::vector<RequestSample> samples;
    SimTime duration = 0;
};

struct DemandSample {
    SimTime timestamp = 0;
    int demand = 1;

    bool operator==(const DemandSample&) const = default;
};

/// Web-tier node demand, run-length encoded. The last sample's demand
/// persists past `duration`.
struct DemandSeries {
    std::vector<DemandSample> samples;
    SimTime duration = 0;
    /// Number of input values that were clamped up to one.
    std::size_t clamped = 0;

    int peak() const;
    int trough() const;
    int final_demand() const;
    int at(SimTime t) const;
};

/// Parse an SWF log. Fields 1, 2, 4 and 5 (job id, submit, run time,
/// allocated processors) are consumed.
SwfTrace parse_swf(std::istream& in, int procs_per_node = kDefaultProcsPerNode);

/// Inverse of parse_swf on the four consumed fields; unused fields are -1.
void write_swf(std::ostream& out, const std::vector<JobRecord>& jobs);

/// Keep jobs with start <= submit < start + length, re-based to the window.
std::vector<JobRecord> window_jobs(const std::vector<JobRecord>& jobs, SimTime start,
                                   SimTime length);

/// Split off jobs wider than `max_nodes`. Returns the kept jobs; the number
/// rejected is written to `rejected`.
std::vector<JobRecord> reject_oversized(const std::vector<JobRecord>& jobs, int max_nodes,
                                        std::size_t& rejected);

/// Parse `YYYY-MM-DDTHH:MM:SS` with a `Z` or `+HH:MM`/`-HH:MM` suffix into
/// Unix seconds.
std::int64_t parse_instant(std::string_view text);

/// Offset of an absolute instant inside a parsed SWF trace, in the trace's
/// re-based time axis. Requires the UnixStartTime header.
SimTime window_start_for_instant(const SwfTrace& trace, std::int64_t unix_instant);

RequestSeries parse_requests(std::istream& in);
RequestSeries scale_requests(const RequestSeries& series, double factor);

DemandSeries parse_demand_series(std::istream& in);
void write_demand_series(std::ostream& out, const DemandSeries& series);

/// Stable FNV-1a digest of a job list and demand series; reports built from
/// different inputs carry different digests.
std::uint64_t trace_digest(const std::vector<JobRecord>& jobs, const DemandSeries& demand);

} // namespace consolidsim::traces

#endif // CONSOLIDSIM_TRACES_HPP
