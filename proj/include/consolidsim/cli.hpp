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
 * \file consolidsim/cli.hpp
 *
 * \brief Experiment harness behind the `consolidsim` command: load traces,
 *  build the web demand, run one configuration or a sweep, write reports.
 */

#ifndef CONSOLIDSIM_CLI_HPP
#define CONSOLIDSIM_CLI_HPP

#include <consolidsim/autoscaler.hpp>
#include <consolidsim/traces.hpp>
#include <consolidsim/types.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace consolidsim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInfeasible = 1;
inline constexpr int kExitInputError = 2;

struct SizeSpec {
    int total_nodes = 0;
    Mode mode = Mode::Dynamic;

    bool operator==(const SizeSpec&) const = default;
};

/// Parse `208:static,200,190` style lists.
std::vector<SizeSpec> parse_sizes(std::string_view text);

/// Demand built from a request-rate CSV by the autoscaler.
struct RequestDemand {
    std::string requests_csv;
    autoscaler::AutoscalerConfig scaler;
    double scale_factor = 1.0;
    /// When set, capacity_per_instance is calibrated so the derived demand
    /// peaks at this value.
    std::optional<int> target_peak;
};

struct ExperimentSpec {
    std::string hpc_trace_path;
    std::optional<std::string> demand_csv;
    std::optional<RequestDemand> requests;

    /// Seconds from the start of the re-based trace, or an absolute instant
    /// (YYYY-MM-DDTHH:MM:SS+HH:MM) resolved through the SWF header.
    std::string window_start = "0";
    SimTime window_length = traces::kTwoWeeks;
    /// Count completions within the window only; otherwise count every
    /// completion of the run.
    bool count_within_window = true;

    std::vector<SizeSpec> sizes = {{208, Mode::Static}, {200, Mode::Dynamic}, {190, Mode::Dynamic},
                                   {180, Mode::Dynamic}, {170, Mode::Dynamic}, {160, Mode::Dynamic},
                                   {150, Mode::Dynamic}};
    int static_st_nodes = 144;
    int static_ws_nodes = 64;
    SimTime realloc_delay = 5.0;
    int procs_per_node = traces::kDefaultProcsPerNode;
    bool strict_fifo = false;
    bool event_log = false;
    std::string out_dir = "consolidsim-out";

    /// Throws std::invalid_argument describing the first problem found.
    void validate() const;
};

/// Everything an experiment needs once inputs are loaded.
struct LoadedInputs {
    traces::SwfTrace trace;
    std::vector<traces::JobRecord> windowed;
    traces::DemandSeries demand;
    SimTime window_start = 0;
    std::optional<double> calibrated_capacity;
};

LoadedInputs load_inputs(const ExperimentSpec& spec);

traces::DemandSeries build_demand(const RequestDemand& req,
                                  std::optional<double>* calibrated = nullptr);

int cmd_run(const ExperimentSpec& spec, std::ostream& out, std::ostream& err);

struct DeriveDemandSpec {
    RequestDemand requests;
    /// Empty writes the CSV to `out`.
    std::string out_path;
};

int cmd_derive_demand(const DeriveDemandSpec& spec, std::ostream& out, std::ostream& err);

struct ValidateSpec {
    std::optional<std::string> hpc_trace;
    std::optional<std::string> demand_csv;
    std::optional<std::string> requests_csv;
    int procs_per_node = traces::kDefaultProcsPerNode;
    std::string window_start = "0";
    std::optional<SimTime> window_length;
};

int cmd_validate(const ValidateSpec& spec, std::ostream& out, std::ostream& err);

} // namespace consolidsim::cli

#endif // CONSOLIDSIM_CLI_HPP
