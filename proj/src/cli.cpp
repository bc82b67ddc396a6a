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

#include <consolidsim/cli.hpp>

#include <consolidsim/engine.hpp>
#include <consolidsim/metrics.hpp>

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

namespace consolidsim::cli {

namespace fs = std::filesystem;

namespace {

std::ifstream open_input(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    return in;
}

void write_file(const fs::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write '" + path.string() + "'");
    out << text;
}

/// Run a parser on the file at `path`, prefixing failures with the path.
template <class Parse>
auto parse_file(const std::string& path, Parse parse)
{
    auto in = open_input(path);
    try {
        return parse(in);
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

std::string run_tag(const metrics::RunReport& r)
{
    return std::to_string(r.config_size) + "_" + to_string(r.mode);
}

SimTime resolve_window_start(const std::string& text, const traces::SwfTrace& trace)
{
    if (text.find('T') != std::string::npos)
        return traces::window_start_for_instant(trace, traces::parse_instant(text));
    double v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw std::invalid_argument("bad --window-start '" + text + "'");
    return v;
}

std::string cell(const std::optional<double>& v, int precision)
{
    if (!v)
        return "-";
    std::ostringstream os;
    os << std::fixed << std::setprecision(precision) << *v;
    return os.str();
}

void print_comparison(std::ostream& out, const metrics::Comparison& cmp)
{
    out << std::left << std::setw(6) << "size" << std::setw(9) << "mode" << std::right
        << std::setw(11) << "completed" << std::setw(8) << "killed" << std::setw(16)
        << "mean_turnaround" << std::setw(12) << "cost_ratio" << '\n';
    for (const auto& row : cmp.rows) {
        out << std::left << std::setw(6) << row.config_size << std::setw(9) << to_string(row.mode)
            << std::right << std::setw(11) << row.completed_count << std::setw(8)
            << row.killed_count << std::setw(16) << cell(row.mean_turnaround, 1) << std::setw(12)
            << cell(row.cost_ratio, 3) << '\n';
    }
}

} // namespace

std::vector<SizeSpec> parse_sizes(std::string_view text)
{
    std::vector<SizeSpec> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        if (comma == std::string_view::npos)
            comma = text.size();
        auto item = text.substr(pos, comma - pos);
        while (!item.empty() && item.front() == ' ')
            item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ')
            item.remove_suffix(1);
        if (item.empty())
            throw std::invalid_argument("empty entry in size list");

        SizeSpec s;
        auto colon = item.find(':');
        auto number = item.substr(0, colon);
        if (colon != std::string_view::npos) {
            auto tag = item.substr(colon + 1);
            if (tag == "static")
                s.mode = Mode::Static;
            else if (tag == "dynamic")
                s.mode = Mode::Dynamic;
            else
                throw std::invalid_argument("unknown size tag '" + std::string(tag) + "'");
        }
        const auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(), s.total_nodes);
        if (ec != std::errc{} || ptr != number.data() + number.size() || s.total_nodes <= 0)
            throw std::invalid_argument("bad cluster size '" + std::string(item) + "'");
        out.push_back(s);
        pos = comma + 1;
    }
    return out;
}

void ExperimentSpec::validate() const
{
    if (hpc_trace_path.empty())
        throw std::invalid_argument("an HPC trace is required (--hpc-trace)");
    if (demand_csv.has_value() == requests.has_value())
        throw std::invalid_argument("give exactly one of --demand-csv or --requests-csv");
    if (sizes.empty())
        throw std::invalid_argument("at least one cluster size is required");
    if (!(window_length > 0))
        throw std::invalid_argument("window length must be > 0");
    if (realloc_delay < 0)
        throw std::invalid_argument("realloc delay must be >= 0");
    if (procs_per_node < 1)
        throw std::invalid_argument("procs per node must be >= 1");
    for (const auto& s : sizes)
        if (s.mode == Mode::Static && s.total_nodes != static_st_nodes + static_ws_nodes)
            throw std::invalid_argument("static size " + std::to_string(s.total_nodes)
                                        + " does not match split "
                                        + std::to_string(static_st_nodes) + "+"
                                        + std::to_string(static_ws_nodes));
    if (requests)
        requests->scaler.validate();
}

traces::DemandSeries build_demand(const RequestDemand& req, std::optional<double>* calibrated)
{
    auto series = traces::scale_requests(
        parse_file(req.requests_csv, [](std::istream& in) { return traces::parse_requests(in); }),
        req.scale_factor);
    auto cfg = req.scaler;
    if (req.target_peak) {
        cfg.capacity_per_instance = autoscaler::calibrate_capacity(series, cfg, *req.target_peak);
        if (calibrated)
            *calibrated = cfg.capacity_per_instance;
    }
    return autoscaler::derive_demand(series, cfg);
}

LoadedInputs load_inputs(const ExperimentSpec& spec)
{
    LoadedInputs in;
    in.trace = parse_file(spec.hpc_trace_path, [&spec](std::istream& f) {
        return traces::parse_swf(f, spec.procs_per_node);
    });
    in.window_start = resolve_window_start(spec.window_start, in.trace);
    in.windowed = traces::window_jobs(in.trace.jobs, in.window_start, spec.window_length);

    if (spec.demand_csv) {
        in.demand = parse_file(*spec.demand_csv,
                               [](std::istream& f) { return traces::parse_demand_series(f); });
    } else {
        in.demand = build_demand(*spec.requests, &in.calibrated_capacity);
    }
    return in;
}

int cmd_run(const ExperimentSpec& spec, std::ostream& out, std::ostream& err)
{
    LoadedInputs inputs;
    try {
        spec.validate();
        inputs = load_inputs(spec);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }

    std::vector<engine::SimConfig> configs;
    for (const auto& s : spec.sizes) {
        auto cfg = s.mode == Mode::Static
                     ? engine::SimConfig::split(spec.static_st_nodes, spec.static_ws_nodes)
                     : engine::SimConfig::dynamic(s.total_nodes);
        cfg.realloc_delay = spec.realloc_delay;
        cfg.strict_fifo = spec.strict_fifo;
        if (spec.count_within_window)
            cfg.horizon = spec.window_length;
        configs.push_back(cfg);
    }

    // One job set for every run so the reports stay comparable.
    int widest = std::numeric_limits<int>::max();
    for (const auto& cfg : configs)
        widest = std::min(widest, engine::max_job_nodes(cfg, inputs.demand));
    std::size_t rejected = 0;
    const auto jobs = traces::reject_oversized(inputs.windowed, widest, rejected);

    out << "jobs: " << jobs.size() << " (window " << format_number(inputs.window_start) << " + "
        << format_number(spec.window_length) << " s, " << inputs.trace.skipped
        << " skipped, " << rejected << " rejected wider than " << widest << " nodes)\n";
    out << "peak: " << inputs.demand.peak() << '\n';
    if (inputs.calibrated_capacity)
        out << "calibrated capacity: " << format_number(*inputs.calibrated_capacity) << " req/s\n";

    struct Result {
        metrics::RunReport report;
        std::string events;
    };
    std::vector<std::future<Result>> futures;
    for (const auto& cfg : configs) {
        futures.push_back(std::async(std::launch::async, [&jobs, &inputs, cfg, &spec] {
            Result r;
            std::ostringstream log;
            r.report = engine::run(jobs, inputs.demand, cfg, spec.event_log ? &log : nullptr);
            r.events = log.str();
            return r;
        }));
    }

    std::vector<metrics::RunReport> reports;
    std::vector<std::string> logs;
    try {
        for (auto& f : futures) {
            auto r = f.get();
            reports.push_back(std::move(r.report));
            logs.push_back(std::move(r.events));
        }
    } catch (const std::exception& e) {
        err << "error: simulation failed: " << e.what() << '\n';
        return kExitInputError;
    }

    try {
        const fs::path dir(spec.out_dir);
        fs::create_directories(dir);
        for (std::size_t i = 0; i < reports.size(); ++i) {
            const auto& r = reports[i];
            const auto tag = run_tag(r);
            std::ostringstream csv, util, outcomes;
            metrics::write_report_csv(csv, std::span(&r, 1));
            metrics::write_utilization_csv(util, r);
            metrics::write_outcomes_csv(outcomes, r);
            write_file(dir / ("report_" + tag + ".csv"), csv.str());
            write_file(dir / ("report_" + tag + ".json"), metrics::report_to_json(r));
            write_file(dir / ("utilization_" + tag + ".csv"), util.str());
            write_file(dir / ("jobs_" + tag + ".csv"), outcomes.str());
            if (spec.event_log)
                write_file(dir / ("events_" + tag + ".tsv"), logs[i]);
        }
        std::ostringstream summary;
        metrics::write_report_csv(summary, reports);
        write_file(dir / "summary.csv", summary.str());

        if (reports.size() >= 2) {
            const auto cmp = metrics::compare(reports);
            std::ostringstream table;
            metrics::write_comparison_csv(table, cmp);
            write_file(dir / "comparison.csv", table.str());
            print_comparison(out, cmp);
        } else {
            const auto& r = reports.front();
            metrics::ComparisonRow row;
            row.config_size = r.config_size;
            row.mode = r.mode;
            row.baseline = true;
            row.completed_count = r.completed_count;
            row.killed_count = r.killed_count;
            row.mean_turnaround = r.mean_turnaround;
            row.turnaround_reciprocal = r.turnaround_reciprocal;
            row.ws_demand_satisfaction = r.ws_demand_satisfaction;
            print_comparison(out, metrics::Comparison{r.config_size, {row}});
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }

    bool infeasible = rejected > 0;
    for (const auto& r : reports)
        if (r.infeasible_demand_integral > 0) {
            err << "warning: web demand exceeds capacity at size " << r.config_size << " ("
                << format_number(r.infeasible_demand_integral) << " node-seconds unmet)\n";
            infeasible = true;
        }
    if (rejected > 0)
        err << "warning: " << rejected << " jobs rejected as wider than " << widest << " nodes\n";
    return infeasible ? kExitInfeasible : kExitOk;
}

int cmd_derive_demand(const DeriveDemandSpec& spec, std::ostream& out, std::ostream& err)
{
    traces::DemandSeries demand;
    std::optional<double> capacity;
    try {
        spec.requests.scaler.validate();
        demand = build_demand(spec.requests, &capacity);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }

    std::ostringstream csv;
    traces::write_demand_series(csv, demand);
    std::ostream& stats = spec.out_path.empty() ? err : out;
    if (spec.out_path.empty()) {
        out << csv.str();
    } else {
        try {
            write_file(spec.out_path, csv.str());
        } catch (const std::exception& e) {
            err << "error: " << e.what() << '\n';
            return kExitInputError;
        }
    }
    if (capacity)
        stats << "calibrated capacity: " << format_number(*capacity) << " req/s\n";
    stats << "peak: " << demand.peak() << '\n';
    stats << "changes: " << demand.samples.size() - 1 << '\n';
    return kExitOk;
}

int cmd_validate(const ValidateSpec& spec, std::ostream& out, std::ostream& err)
{
    try {
        if (!spec.hpc_trace && !spec.demand_csv && !spec.requests_csv)
            throw std::invalid_argument("nothing to validate");
        if (spec.hpc_trace) {
            const auto trace = parse_file(*spec.hpc_trace, [&spec](std::istream& f) {
                return traces::parse_swf(f, spec.procs_per_node);
            });
            auto jobs = trace.jobs;
            if (spec.window_length) {
                const auto start = resolve_window_start(spec.window_start, trace);
                jobs = traces::window_jobs(jobs, start, *spec.window_length);
                out << "window: " << format_number(start) << " + "
                    << format_number(*spec.window_length) << " s\n";
            }
            out << "jobs: " << jobs.size() << '\n';
            out << "skipped: " << trace.skipped << '\n';
            if (!jobs.empty()) {
                int widest = 0;
                SimTime first = jobs.front().submit_time, last = first;
                for (const auto& j : jobs) {
                    widest = std::max(widest, j.requested_nodes);
                    first = std::min(first, j.submit_time);
                    last = std::max(last, j.submit_time);
                }
                out << "max job size: " << widest << " nodes\n";
                out << "submit span: " << format_number(first) << " .. " << format_number(last)
                    << " s\n";
            }
        }
        if (spec.demand_csv) {
            const auto demand = parse_file(
                *spec.demand_csv, [](std::istream& f) { return traces::parse_demand_series(f); });
            out << "peak: " << demand.peak() << '\n';
            out << "demand changes: " << demand.samples.size() - 1 << '\n';
            out << "demand duration: " << format_number(demand.duration) << " s\n";
            if (demand.clamped)
                out << "clamped: " << demand.clamped << '\n';
        }
        if (spec.requests_csv) {
            const auto req = parse_file(*spec.requests_csv,
                                        [](std::istream& f) { return traces::parse_requests(f); });
            double peak = 0;
            for (const auto& s : req.samples)
                peak = std::max(peak, s.rate);
            out << "request samples: " << req.samples.size() << '\n';
            out << "request duration: " << format_number(req.duration) << " s\n";
            out << "peak rate: " << format_number(peak) << " req/s\n";
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    return kExitOk;
}

} // namespace consolidsim::cli
