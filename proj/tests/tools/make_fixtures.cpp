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

// Regenerates the bundled fixtures and the oracle-derived golden job
// outcomes. The outputs are checked in; run this only to rebuild them.
//
//   make_fixtures <fixtures-dir>

#include "oracle/brute_force.hpp"
#include "oracle/synthetic.hpp"

#include <consolidsim/cli.hpp>
#include <consolidsim/engine.hpp>
#include <consolidsim/traces.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace fs = std::filesystem;
using namespace consolidsim;

namespace {

struct SwfJob {
    long id;
    long submit;
    long runtime;
    int nodes;
};

void write_swf(const fs::path& path, const std::vector<SwfJob>& jobs, const std::string& note)
{
    std::ofstream out(path);
    out << "; " << note << "\n";
    out << "; UnixStartTime: 956700003\n";
    out << "; TimeZoneString: US/Pacific\n";
    out << "; MaxNodes: 144\n";
    out << "; MaxProcs: 1152\n";
    for (const auto& j : jobs) {
        const int procs = j.nodes * traces::kDefaultProcsPerNode;
        out << j.id << ' ' << j.submit << " -1 " << j.runtime << ' ' << procs << " -1 -1 " << procs
            << ' ' << j.runtime << " -1 1 -1 -1 -1 -1 -1 -1 -1\n";
    }
}

void write_demand(const fs::path& path, const std::vector<std::pair<long, int>>& steps)
{
    std::ofstream out(path);
    out << "timestamp,demand\n";
    for (auto [t, n] : steps)
        out << t << ',' << n << '\n';
}

/// Small trace at production scale for the CLI golden reports.
void tiny(const fs::path& dir, std::mt19937_64& rng)
{
    auto pick = [&rng](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
    std::vector<SwfJob> jobs;
    long t = 0;
    for (long id = 1; id <= 40; ++id) {
        t += pick(0, 90);
        jobs.push_back({id, t, pick(60, 1500), static_cast<int>(pick(1, 80))});
    }
    write_swf(dir / "tiny.swf", jobs, "Synthetic 40-job trace, node-exclusive, 8 procs per node");
    write_demand(dir / "tiny_demand.csv",
                 {{0, 8}, {300, 24}, {700, 64}, {1100, 40}, {1500, 12}, {2400, 30}, {2900, 6}});

    std::ofstream req(dir / "tiny_requests.csv");
    req << "timestamp,requests_per_sec\n";
    for (long s = 0; s < 3600; s += 60) {
        double rate = 40 + 25 * std::sin(static_cast<double>(s) / 500.0);
        if (s >= 1800 && s < 2100)
            rate *= 6;
        req << s << ',' << static_cast<long>(rate) << '\n';
    }
    std::ofstream zero(dir / "flat_zero_requests.csv");
    zero << "timestamp,requests_per_sec\n0,0\n600,0\n1200,0\n";
}

/// Saturated 7-node job stream plus a spiky demand series (peak 9, mean 3)
/// for the 29-node static versus 22-node dynamic comparison.
void trend(const fs::path& dir, std::mt19937_64& rng)
{
    auto pick = [&rng](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
    const long span = 86400;

    std::vector<std::pair<long, int>> demand{{0, 1}};
    long t = 0;
    double area = 0;
    while (true) {
        const long gap = pick(160, 500);
        const long spike = pick(60, 160);
        if (t + gap + spike >= span)
            break;
        area += static_cast<double>(gap) * 1;
        t += gap;
        demand.push_back({t, 9});
        area += static_cast<double>(spike) * 9;
        t += spike;
        demand.push_back({t, 1});
    }
    area += static_cast<double>(span - t);
    demand.push_back({span, 1});
    write_demand(dir / "trend_demand.csv", demand);
    std::cerr << "trend demand mean " << area / span << "\n";

    std::vector<SwfJob> jobs;
    long submit = 0;
    for (long id = 1; submit < span; ++id) {
        jobs.push_back({id, submit, pick(60, 240), 7});
        submit += pick(0, 100);
    }
    write_swf(dir / "trend.swf", jobs, "Synthetic saturated trace of 7-node jobs, one day");
}

/// Per-job outcomes for every default configuration, computed by the
/// brute-force simulator only.
void golden(const fs::path& dir)
{
    cli::ExperimentSpec spec;
    spec.hpc_trace_path = (dir / "tiny.swf").string();
    spec.demand_csv = (dir / "tiny_demand.csv").string();
    const auto inputs = cli::load_inputs(spec);

    int widest = 1 << 30;
    for (const auto& s : spec.sizes) {
        const auto cfg = s.mode == Mode::Static
                           ? engine::SimConfig::split(spec.static_st_nodes, spec.static_ws_nodes)
                           : engine::SimConfig::dynamic(s.total_nodes);
        widest = std::min(widest, engine::max_job_nodes(cfg, inputs.demand));
    }
    std::size_t rejected = 0;
    const auto jobs = traces::reject_oversized(inputs.windowed, widest, rejected);

    fs::create_directories(dir / "golden");
    for (const auto& s : spec.sizes) {
        oracle::Instance in;
        in.total = s.total_nodes;
        in.is_static = s.mode == Mode::Static;
        if (in.is_static) {
            in.st_nodes = spec.static_st_nodes;
            in.ws_nodes = spec.static_ws_nodes;
        }
        in.delay = static_cast<long>(spec.realloc_delay);
        for (const auto& j : jobs)
            in.jobs.push_back({j.job_id, j.requested_nodes, static_cast<long>(j.submit_time),
                               static_cast<long>(j.runtime)});
        for (const auto& d : inputs.demand.samples)
            in.demand.push_back({static_cast<long>(d.timestamp), d.demand});
        const auto result = oracle::brute_force(in);

        std::ofstream out(dir / "golden"
                          / ("jobs_" + std::to_string(s.total_nodes) + "_" + to_string(s.mode) + ".csv"));
        out << "job_id,size,submit,start,end,state\n";
        for (const auto& j : in.jobs) {
            const auto& o = result.jobs.at(j.id);
            out << j.id << ',' << j.size << ',' << j.submit << ',' << o.start << ',' << o.end << ','
                << (o.fate == oracle::Fate::Killed ? "killed" : "completed") << '\n';
        }
    }

    // Aggregate tables are frozen from the simulator once its per-job
    // outcomes agree with the oracle files above.
    const auto scratch = fs::temp_directory_path() / "consolidsim_fixtures";
    fs::remove_all(scratch);
    spec.out_dir = scratch.string();
    if (cli::cmd_run(spec, std::cerr, std::cerr) != cli::kExitOk)
        throw std::runtime_error("simulation of the tiny fixture failed");
    for (const auto& entry : fs::directory_iterator(dir / "golden")) {
        std::ifstream a(entry.path()), b(scratch / entry.path().filename());
        std::stringstream sa, sb;
        sa << a.rdbuf();
        sb << b.rdbuf();
        if (sa.str() != sb.str())
            throw std::runtime_error("simulator disagrees with oracle on " + entry.path().filename().string());
    }
    for (const char* name : {"summary.csv", "comparison.csv"})
        fs::copy_file(scratch / name, dir / "golden" / name, fs::copy_options::overwrite_existing);
}

} // namespace

int main(int argc, char** argv)
{
    if (argc != 2) {
        std::cerr << "usage: make_fixtures <fixtures-dir>\n";
        return 2;
    }
    const fs::path dir(argv[1]);
    fs::create_directories(dir);
    std::mt19937_64 rng(oracle::base_seed());
    tiny(dir, rng);
    trend(dir, rng);
    golden(dir);
    return 0;
}
