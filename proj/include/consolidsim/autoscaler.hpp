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
 * \file consolidsim/autoscaler.hpp
 *
 * \brief Threshold autoscaler for the web tier.
 *
 * Utilization is modelled analytically as rate / (n * capacity), clamped to
 * one. Every tick the autoscaler averages utilization over a sliding window;
 * with a full window it adds one instance when the average exceeds the
 * upscale threshold, or removes one when the average falls below
 * threshold * (n - 1) / n. The window restarts after each change.
 */

#ifndef CONSOLIDSIM_AUTOSCALER_HPP
#define CONSOLIDSIM_AUTOSCALER_HPP

#include <consolidsim/traces.hpp>
#include <consolidsim/types.hpp>

#include <deque>

namespace consolidsim::autoscaler {

struct AutoscalerConfig {
    /// Requests/second one instance serves at 100% CPU.
    double capacity_per_instance = 100.0;
    double upscale_threshold = 0.80;
    SimTime window = 20.0;
    SimTime tick = 1.0;
    int min_instances = 1;

    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;
};

struct UtilSample {
    SimTime time = 0;
    double utilization = 0;
};

struct ScalerState {
    int n = 1;
    std::deque<UtilSample> util_window;

    static ScalerState initial(const AutoscalerConfig& cfg) { return ScalerState{cfg.min_instances, {}}; }
};

double utilization(double rate, int n, const AutoscalerConfig& cfg);

ScalerState step(ScalerState state, SimTime now, double rate, const AutoscalerConfig& cfg);

/// Replay a request series tick by tick and record every instance-count
/// change. The rate applied over (t - tick, t] is the sample in force at
/// t - tick.
traces::DemandSeries derive_demand(const traces::RequestSeries& requests,
                                   const AutoscalerConfig& cfg);

/// Find a per-instance capacity for which derive_demand peaks at exactly
/// `target_peak`. Throws std::runtime_error when no such capacity exists.
double calibrate_capacity(const traces::RequestSeries& requests, AutoscalerConfig cfg,
                          int target_peak);

} // namespace consolidsim::autoscaler

#endif // CONSOLIDSIM_AUTOSCALER_HPP
