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

#include <consolidsim/traces.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>

namespace consolidsim::traces {

namespace {

std::string_view trim(std::string_view s)
{
    const auto* ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_ws(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
            ++i;
        const auto start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])))
            ++i;
        if (i > start)
            out.push_back(line.substr(start, i - start));
    }
    return out;
}

std::optional<double> to_double(std::string_view s)
{
    if (s.empty())
        return std::nullopt;
    if (s.front() == '+')
        s.remove_prefix(1);
    double v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
        return std::nullopt;
    return v;
}

std::optional<std::int64_t> to_int(std::string_view s)
{
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        return std::nullopt;
    return v;
}

// Parse a "number" field that is required to hold an integral value, allowing
// forms such as "12.0".
std::optional<std::int64_t> to_integral(std::string_view s)
{
    if (auto i = to_int(s))
        return i;
    auto d = to_double(s);
    if (!d || std::floor(*d) != *d)
        return std::nullopt;
    return static_cast<std::int64_t>(*d);
}

bool is_header_line(std::string_view line, std::size_t lineno)
{
    // Tolerate a textual CSV header on the first line only.
    if (lineno != 1 || line.empty())
        return false;
    const char c = line.front();
    return !(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.');
}

std::pair<std::string_view, std::string_view> split_csv2(std::string_view line, std::size_t lineno)
{
    const auto comma = line.find(',');
    if (comma == std::string_view::npos)
        throw ParseError("expected two comma-separated fields", lineno);
    auto a = trim(line.substr(0, comma));
    auto b = trim(line.substr(comma + 1));
    if (b.find(',') != std::string_view::npos)
        throw ParseError("expected two comma-separated fields", lineno);
    return {a, b};
}

} // namespace

int DemandSeries::peak() const
{
    int p = 0;
    for (const auto& s : samples)
        p = std::max(p, s.demand);
    return p;
}

int DemandSeries::trough() const
{
    if (samples.empty())
        return 0;
    int t = samples.front().demand;
    for (const auto& s : samples)
        t = std::min(t, s.demand);
    return t;
}

int DemandSeries::final_demand() const
{
    return samples.empty() ? 0 : samples.back().demand;
}

int DemandSeries::at(SimTime t) const
{
    auto it = std::upper_bound(samples.begin(), samples.end(), t,
                               [](SimTime v, const DemandSample& s) { return v < s.timestamp; });
    if (it == samples.begin())
        return 0;
    return std::prev(it)->demand;
}

SwfTrace parse_swf(std::istream& in, int procs_per_node)
{
    if (procs_per_node < 1)
        throw std::invalid_argument("procs_per_node must be >= 1");

    struct Raw {
        JobId id;
        double submit;
        double runtime;
        int procs;
    };

    SwfTrace trace;
    std::vector<Raw> raw;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto body = trim(line);
        if (body.empty())
            continue;
        if (body.front() == ';') {
            auto key = body.find("UnixStartTime:");
            if (key != std::string_view::npos) {
                auto value = trim(body.substr(key + std::strlen("UnixStartTime:")));
                if (auto v = to_int(value))
                    trace.unix_start_time = *v;
            }
            continue;
        }
        auto fields = split_ws(body);
        if (fields.size() < 18)
            throw ParseError("expected 18 SWF fields, found " + std::to_string(fields.size()),
                             lineno);
        auto id = to_integral(fields[0]);
        auto submit = to_double(fields[1]);
        auto runtime = to_double(fields[3]);
        auto procs = to_integral(fields[4]);
        if (!id || !submit || !runtime || !procs)
            throw ParseError("non-numeric required SWF field", lineno);
        if (*runtime <= 0 || *procs <= 0) {
            ++trace.skipped;
            continue;
        }
        if (*submit < 0)
            throw ParseError("negative submit time", lineno);
        raw.push_back({*id, *submit, *runtime, static_cast<int>(*procs)});
    }

    if (raw.empty())
        throw EmptyTraceError("SWF trace has no usable jobs");

    double earliest = raw.front().submit;
    for (const auto& r : raw)
        earliest = std::min(earliest, r.submit);
    trace.rebase_offset = earliest;

    trace.jobs.reserve(raw.size());
    for (const auto& r : raw) {
        JobRecord j;
        j.job_id = r.id;
        j.submit_time = r.submit - earliest;
        j.runtime = r.runtime;
        j.requested_procs = r.procs;
        j.requested_nodes = (r.procs + procs_per_node - 1) / procs_per_node;
        trace.jobs.push_back(j);
    }
    return trace;
}

void write_swf(std::ostream& out, const std::vector<JobRecord>& jobs)
{
    out << "; consolidsim SWF export\n";
    for (const auto& j : jobs) {
        out << j.job_id << ' ' << format_number(j.submit_time) << " -1 "
            << format_number(j.runtime) << ' ' << j.requested_procs;
        for (int f = 6; f <= 18; ++f)
            out << " -1";
        out << '\n';
    }
}

std::vector<JobRecord> window_jobs(const std::vector<JobRecord>& jobs, SimTime start,
                                   SimTime length)
{
    if (!(length > 0))
        throw std::invalid_argument("window length must be > 0");
    std::vector<JobRecord> out;
    for (const auto& j : jobs) {
        if (j.submit_time >= start && j.submit_time < start + length) {
            auto copy = j;
            copy.submit_time -= start;
            out.push_back(copy);
        }
    }
    return out;
}

std::vector<JobRecord> reject_oversized(const std::vector<JobRecord>& jobs, int max_nodes,
                                        std::size_t& rejected)
{
    std::vector<JobRecord> kept;
    kept.reserve(jobs.size());
    rejected = 0;
    for (const auto& j : jobs) {
        if (j.requested_nodes > max_nodes)
            ++rejected;
        else
            kept.push_back(j);
    }
    return kept;
}

std::int64_t parse_instant(std::string_view text)
{
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
    int consumed = 0;
    const std::string str(trim(text));
    if (std::sscanf(str.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%n", &y, &mo, &d, &h, &mi, &s, &consumed)
            != 6
        || consumed != 19)
        throw std::invalid_argument("bad instant '" + str + "': expected YYYY-MM-DDTHH:MM:SS+HH:MM");

    using namespace std::chrono;
    const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                             day{static_cast<unsigned>(d)}};
    if (!ymd.ok() || h > 23 || mi > 59 || s > 60)
        throw std::invalid_argument("bad instant '" + str + "': field out of range");

    std::int64_t offset = 0;
    std::string_view zone = std::string_view(str).substr(19);
    if (zone == "Z" || zone.empty()) {
        offset = 0;
    } else {
        int zh = 0, zm = 0;
        char sign = 0;
        const std::string z(zone);
        if (std::sscanf(z.c_str(), "%c%2d:%2d", &sign, &zh, &zm) != 3 || (sign != '+' && sign != '-'))
            throw std::invalid_argument("bad instant '" + str + "': bad zone offset");
        offset = (sign == '+' ? 1 : -1) * (zh * 3600 + zm * 60);
    }

    const auto days = sys_days{ymd}.time_since_epoch().count();
    return static_cast<std::int64_t>(days) * 86400 + h * 3600 + mi * 60 + s - offset;
}

SimTime window_start_for_instant(const SwfTrace& trace, std::int64_t unix_instant)
{
    if (!trace.unix_start_time)
        throw std::invalid_argument("SWF trace has no UnixStartTime header");
    return static_cast<SimTime>(unix_instant - *trace.unix_start_time) - trace.rebase_offset;
}

RequestSeries parse_requests(std::istream& in)
{
    RequestSeries series;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto body = trim(line);
        if (body.empty() || body.front() == '#' || is_header_line(body, lineno))
            continue;
        auto [ts_s, rate_s] = split_csv2(body, lineno);
        auto ts = to_double(ts_s);
        auto rate = to_double(rate_s);
        if (!ts || !rate)
            throw ParseError("non-numeric field", lineno);
        if (*rate < 0)
            throw ParseError("negative request rate", lineno);
        if (series.samples.empty()) {
            if (*ts != 0)
                throw ParseError("first timestamp must be 0", lineno);
        } else if (*ts <= series.samples.back().timestamp) {
            throw ParseError("timestamps must be strictly increasing", lineno);
        }
        series.samples.push_back({*ts, *rate});
    }
    if (series.samples.empty())
        throw EmptyTraceError("request series is empty");

    // The last sample holds for one sampling interval.
    const auto n = series.samples.size();
    const SimTime last = series.samples.back().timestamp;
    const SimTime step = n > 1 ? last - series.samples[n - 2].timestamp : 1.0;
    series.duration = last + step;
    return series;
}

RequestSeries scale_requests(const RequestSeries& series, double factor)
{
    if (!(factor > 0))
        throw std::invalid_argument("scale factor must be > 0");
    RequestSeries out = series;
    for (auto& s : out.samples)
        s.rate *= factor;
    return out;
}

DemandSeries parse_demand_series(std::istream& in)
{
    DemandSeries series;
    std::string line;
    std::size_t lineno = 0;
    std::optional<SimTime> last_ts;
    while (std::getline(in, line)) {
        ++lineno;
        auto body = trim(line);
        if (body.empty() || body.front() == '#' || is_header_line(body, lineno))
            continue;
        auto [ts_s, demand_s] = split_csv2(body, lineno);
        auto ts = to_double(ts_s);
        if (!ts)
            throw ParseError("non-numeric timestamp", lineno);
        auto demand = to_int(demand_s);
        if (!demand)
            throw ParseError("demand must be an integer", lineno);
        if (last_ts && *ts <= *last_ts)
            throw ParseError("timestamps must be strictly increasing", lineno);
        last_ts = *ts;

        int value = static_cast<int>(*demand);
        if (value < 1) {
            value = 1;
            ++series.clamped;
        }
        if (series.samples.empty() || series.samples.back().demand != value)
            series.samples.push_back({*ts, value});
    }
    if (series.samples.empty())
        throw EmptyTraceError("demand series is empty");
    series.duration = *last_ts;
    return series;
}

void write_demand_series(std::ostream& out, const DemandSeries& series)
{
    for (const auto& s : series.samples)
        out << format_number(s.timestamp) << ',' << s.demand << '\n';
}

std::uint64_t trace_digest(const std::vector<JobRecord>& jobs, const DemandSeries& demand)
{
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](const void* p, std::size_t n) {
        const auto* b = static_cast<const unsigned char*>(p);
        for (std::size_t i = 0; i < n; ++i) {
            h ^= b[i];
            h *= 1099511628211ull;
        }
    };
    for (const auto& j : jobs) {
        mix(&j.job_id, sizeof j.job_id);
        mix(&j.submit_time, sizeof j.submit_time);
        mix(&j.runtime, sizeof j.runtime);
        mix(&j.requested_nodes, sizeof j.requested_nodes);
    }
    for (const auto& s : demand.samples) {
        mix(&s.timestamp, sizeof s.timestamp);
        mix(&s.demand, sizeof s.demand);
    }
    mix(&demand.duration, sizeof demand.duration);
    return h;
}

} // namespace consolidsim::traces
