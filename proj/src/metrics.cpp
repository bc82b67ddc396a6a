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

#include <consolidsim/metrics.hpp>

#include <json.hpp>

#include <algorithm>
#include <ostream>

namespace consolidsim::metrics {

namespace {

std::string opt_number(const std::optional<double>& v)
{
    return v ? format_number(*v) : std::string{};
}

nlohmann::json opt_json(const std::optional<double>& v)
{
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

int held_at(const std::vector<WsPoint>& series, SimTime t)
{
    auto it = std::upper_bound(series.begin(), series.end(), t,
                               [](SimTime v, const WsPoint& p) { return v < p.time; });
    return it == series.begin() ? 0 : std::prev(it)->held;
}

} // namespace

const char* to_string(JobState s)
{
    switch (s) {
    case JobState::Queued:
        return "queued";
    case JobState::Running:
        return "running";
    case JobState::Completed:
        return "completed";
    case JobState::Killed:
        return "killed";
    }
    return "?";
}

RunReport finalize(std::vector<JobOutcome> job_outcomes, const std::vector<WsPoint>& ws_series,
                   std::vector<UtilPoint> utilization, const traces::DemandSeries& demand,
                   const RunContext& ctx)
{
    RunReport r;
    r.config_size = ctx.config_size;
    r.mode = ctx.mode;
    r.horizon = ctx.horizon;
    r.trace_hash = ctx.trace_hash;
    r.end_time = ctx.end_time;
    r.submitted_count = static_cast<int>(job_outcomes.size());

    auto by_horizon = [&](const JobOutcome& j) {
        return j.end && (!ctx.horizon || *j.end <= *ctx.horizon);
    };

    double turnaround_sum = 0;
    for (const auto& j : job_outcomes) {
        if (j.state == JobState::Completed) {
            ++r.completed_total;
            if (by_horizon(j)) {
                ++r.completed_count;
                turnaround_sum += *j.end - j.submit;
            }
        } else if (j.state == JobState::Killed && by_horizon(j)) {
            ++r.killed_count;
        }
    }
    r.unfinished_count = r.submitted_count - r.completed_count - r.killed_count;
    if (!ctx.horizon && r.unfinished_count != 0)
        throw InvariantViolation("finalize: jobs left unfinished in a run-to-completion report");

    if (r.completed_count > 0) {
        const double mean = turnaround_sum / r.completed_count;
        r.mean_turnaround = mean;
        r.turnaround_reciprocal = 1.0 / mean;
    }

    // Both holdings and demand are step functions; integrate between the
    // union of their breakpoints.
    std::vector<SimTime> cuts;
    for (const auto& p : ws_series)
        cuts.push_back(p.time);
    for (const auto& s : demand.samples)
        cuts.push_back(s.timestamp);
    cuts.push_back(0);
    cuts.push_back(ctx.end_time);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    double demanded = 0;
    double met = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const SimTime a = cuts[i];
        const SimTime b = cuts[i + 1];
        if (a < 0 || b > ctx.end_time)
            continue;
        const double dt = b - a;
        const int want = demand.at(a);
        const int got = std::min(held_at(ws_series, a), want);
        demanded += want * dt;
        met += got * dt;
        r.unmet_demand_integral += (want - got) * dt;
        r.infeasible_demand_integral += std::max(0, want - ctx.ws_capacity) * dt;
    }
    r.ws_demand_satisfaction =
        (r.unmet_demand_integral == 0 || demanded == 0) ? 1.0 : met / demanded;

    r.utilization_series = std::move(utilization);
    r.job_outcomes = std::move(job_outcomes);
    return r;
}

Comparison compare(std::span<const RunReport> reports)
{
    if (reports.size() < 2)
        throw std::invalid_argument("compare: need at least two reports");
    for (const auto& r : reports)
        if (r.trace_hash != reports.front().trace_hash)
            throw IncomparableRunsError("compare: reports come from different traces");

    const RunReport* baseline = nullptr;
    for (const auto& r : reports)
        if (r.mode == Mode::Static) {
            baseline = &r;
            break;
        }
    if (!baseline)
        for (const auto& r : reports)
            if (!baseline || r.config_size > baseline->config_size)
                baseline = &r;

    Comparison cmp;
    cmp.baseline_size = baseline->config_size;
    for (const auto& r : reports) {
        ComparisonRow row;
        row.config_size = r.config_size;
        row.mode = r.mode;
        row.baseline = (&r == baseline);
        row.completed_count = r.completed_count;
        row.killed_count = r.killed_count;
        row.mean_turnaround = r.mean_turnaround;
        row.turnaround_reciprocal = r.turnaround_reciprocal;
        row.ws_demand_satisfaction = r.ws_demand_satisfaction;
        row.cost_ratio = static_cast<double>(r.config_size) / baseline->config_size;
        row.delta_completed = r.completed_count - baseline->completed_count;
        if (r.mean_turnaround && baseline->mean_turnaround)
            row.delta_mean_turnaround = *r.mean_turnaround - *baseline->mean_turnaround;
        cmp.rows.push_back(row);
    }
    std::stable_sort(cmp.rows.begin(), cmp.rows.end(),
                     [](const ComparisonRow& a, const ComparisonRow& b) {
                         if (a.baseline != b.baseline)
                             return a.baseline;
                         if (a.mode != b.mode)
                             return a.mode == Mode::Static;
                         return a.config_size > b.config_size;
                     });
    return cmp;
}

void write_report_csv(std::ostream& out, std::span<const RunReport> reports)
{
    out << "config_size,mode,horizon,submitted,completed,killed,unfinished,completed_total,"
           "mean_turnaround,turnaround_reciprocal,ws_demand_satisfaction,"
           "unmet_demand_integral,infeasible_demand_integral,end_time\n";
    for (const auto& r : reports) {
        out << r.config_size << ',' << to_string(r.mode) << ',' << opt_number(r.horizon) << ','
            << r.submitted_count << ',' << r.completed_count << ',' << r.killed_count << ','
            << r.unfinished_count << ',' << r.completed_total << ','
            << opt_number(r.mean_turnaround) << ',' << opt_number(r.turnaround_reciprocal) << ','
            << format_number(r.ws_demand_satisfaction) << ','
            << format_number(r.unmet_demand_integral) << ','
            << format_number(r.infeasible_demand_integral) << ',' << format_number(r.end_time)
            << '\n';
    }
}

std::string report_to_json(const RunReport& r)
{
    nlohmann::ordered_json j;
    j["config_size"] = r.config_size;
    j["mode"] = to_string(r.mode);
    j["horizon"] = opt_json(r.horizon);
    j["trace_hash"] = r.trace_hash;
    j["submitted_count"] = r.submitted_count;
    j["completed_count"] = r.completed_count;
    j["killed_count"] = r.killed_count;
    j["unfinished_count"] = r.unfinished_count;
    j["completed_total"] = r.completed_total;
    j["mean_turnaround"] = opt_json(r.mean_turnaround);
    j["turnaround_reciprocal"] = opt_json(r.turnaround_reciprocal);
    j["ws_demand_satisfaction"] = r.ws_demand_satisfaction;
    j["unmet_demand_integral"] = r.unmet_demand_integral;
    j["infeasible_demand_integral"] = r.infeasible_demand_integral;
    j["end_time"] = r.end_time;
    return j.dump(2) + "\n";
}

void write_utilization_csv(std::ostream& out, const RunReport& report)
{
    out << "time,st,ws,idle\n";
    for (const auto& p : report.utilization_series)
        out << format_number(p.time) << ',' << p.st_busy << ',' << p.ws_held << ',' << p.idle
            << '\n';
}

void write_outcomes_csv(std::ostream& out, const RunReport& report)
{
    out << "job_id,size,submit,start,end,state\n";
    for (const auto& j : report.job_outcomes)
        out << j.job_id << ',' << j.size << ',' << format_number(j.submit) << ','
            << opt_number(j.start) << ',' << opt_number(j.end) << ',' << to_string(j.state) << '\n';
}

void write_comparison_csv(std::ostream& out, const Comparison& cmp)
{
    out << "config_size,mode,baseline,completed,killed,mean_turnaround,turnaround_reciprocal,"
           "ws_demand_satisfaction,cost_ratio,delta_completed,delta_mean_turnaround\n";
    for (const auto& row : cmp.rows) {
        char ratio[32];
        std::snprintf(ratio, sizeof ratio, "%.3f", row.cost_ratio);
        out << row.config_size << ',' << to_string(row.mode) << ',' << (row.baseline ? 1 : 0)
            << ',' << row.completed_count << ',' << row.killed_count << ','
            << opt_number(row.mean_turnaround) << ',' << opt_number(row.turnaround_reciprocal)
            << ',' << format_number(row.ws_demand_satisfaction) << ',' << ratio << ','
            << row.delta_completed << ',' << opt_number(row.delta_mean_turnaround) << '\n';
    }
}

} // namespace consolidsim::metrics
