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

// consolidsim: run consolidation experiments from the command line.
//
//   consolidsim run --hpc-trace jobs.swf --demand-csv demand.csv --sizes 29:static,22 \
//                   --static-split 20,9 --out results/
//   consolidsim derive-demand --requests-csv wc98.csv --scale-factor 2.22 --target-peak 64
//   consolidsim validate --hpc-trace jobs.swf --window-len 1209600

#include <consolidsim/cli.hpp>

#include <CLI11.hpp>

#include <iostream>

using namespace consolidsim;

namespace {

void add_autoscaler_flags(CLI::App* cmd, cli::RequestDemand& req)
{
    cmd->add_option("--capacity", req.scaler.capacity_per_instance,
                    "Requests/second one instance serves at full CPU");
    cmd->add_option("--scale-factor", req.scale_factor, "Multiply every request rate")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--window-secs", req.scaler.window, "Utilization averaging window (s)");
    cmd->add_option("--tick", req.scaler.tick, "Autoscaler evaluation period (s)");
    cmd->add_option("--threshold", req.scaler.upscale_threshold, "Upscale utilization threshold");
    cmd->add_option("--min-instances", req.scaler.min_instances, "Instance floor");
    cmd->add_option("--target-peak", req.target_peak,
                    "Calibrate --capacity so the derived demand peaks at this value");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Trace-driven simulator for consolidating batch and web workloads"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Experiment file (key = value); flags override it");

    // run
    cli::ExperimentSpec spec;
    cli::RequestDemand run_requests;
    std::string run_requests_csv;
    std::string demand_csv;
    std::string sizes = "208:static,200,190,180,170,160,150";
    std::string split = "144,64";
    bool count_all = false;
    auto* run = app.add_subcommand("run", "Simulate one or more cluster configurations");
    run->add_option("--hpc-trace", spec.hpc_trace_path, "SWF job log")->required();
    auto* demand_opt = run->add_option("--demand-csv", demand_csv, "Web demand series CSV");
    auto* requests_opt =
        run->add_option("--requests-csv", run_requests_csv, "Request-rate CSV fed to the autoscaler");
    demand_opt->excludes(requests_opt);
    add_autoscaler_flags(run, run_requests);
    run->add_option("--window-start", spec.window_start,
                    "Window start: seconds into the trace, or YYYY-MM-DDTHH:MM:SS+HH:MM");
    run->add_option("--window-len", spec.window_length, "Window length (s)");
    run->add_flag("--count-all", count_all, "Count completions after the window too");
    run->add_option("--sizes", sizes, "Cluster sizes, N:static marks the dedicated baseline");
    run->add_option("--static-split", split, "Batch,web node split of the static baseline");
    run->add_option("--realloc-delay", spec.realloc_delay, "Seconds to hand reclaimed nodes to the web tier");
    run->add_option("--procs-per-node", spec.procs_per_node, "Processors per node in the SWF log");
    run->add_option("--out", spec.out_dir, "Output directory");
    run->add_flag("--event-log", spec.event_log, "Write a per-run event log");
    run->add_flag("--strict-fifo", spec.strict_fifo, "Block the queue at the first job that does not fit");

    // derive-demand
    cli::DeriveDemandSpec derive;
    auto* dd = app.add_subcommand("derive-demand", "Turn a request-rate series into a web demand series");
    dd->add_option("--requests-csv", derive.requests.requests_csv, "Request-rate CSV")->required();
    add_autoscaler_flags(dd, derive.requests);
    dd->add_option("--out", derive.out_path, "Write the demand CSV here instead of stdout");

    // validate
    cli::ValidateSpec check;
    SimTime check_window_len = 0;
    auto* val = app.add_subcommand("validate", "Parse inputs and print diagnostics");
    val->add_option("--hpc-trace", check.hpc_trace, "SWF job log");
    val->add_option("--demand-csv", check.demand_csv, "Web demand series CSV");
    val->add_option("--requests-csv", check.requests_csv, "Request-rate CSV");
    val->add_option("--procs-per-node", check.procs_per_node, "Processors per node in the SWF log");
    val->add_option("--window-start", check.window_start, "Window start");
    auto* len_opt = val->add_option("--window-len", check_window_len, "Window length (s)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : cli::kExitInputError;
    }

    if (run->parsed()) {
        try {
            spec.sizes = cli::parse_sizes(sizes);
            const auto parts = cli::parse_sizes(split);
            if (parts.size() != 2)
                throw std::invalid_argument("--static-split takes ST,WS");
            spec.static_st_nodes = parts[0].total_nodes;
            spec.static_ws_nodes = parts[1].total_nodes;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << '\n';
            return cli::kExitInputError;
        }
        spec.count_within_window = !count_all;
        if (*demand_opt)
            spec.demand_csv = demand_csv;
        if (*requests_opt) {
            run_requests.requests_csv = run_requests_csv;
            spec.requests = run_requests;
        }
        return cli::cmd_run(spec, std::cout, std::cerr);
    }
    if (dd->parsed())
        return cli::cmd_derive_demand(derive, std::cout, std::cerr);
    if (*len_opt)
        check.window_length = check_window_len;
    return cli::cmd_validate(check, std::cout, std::cerr);
}
