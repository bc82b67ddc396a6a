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

#include <consolidsim/autoscaler.hpp>

#include <algorithm>
#include <cmath>

namespace consolidsim::autoscaler {

void AutoscalerConfig::validate() const
{
    if (!(capacity_per_instance > 0))
        throw std::invalid_argument("capacity_per_instance must be > 0");
    if (!(upscale_threshold > 0 && upscale_threshold < 1))
        throw std::invalid_argument("upscale_threshold must be in (0, 1)");
    if (!(window > 0))
        throw std::invalid_argument("window must be > 0");
    if (!(tick > 0))
        throw std::invalid_argument("tick must be > 0");
    if (min_instances < 1)
        throw std::invalid_argument("min_instances must be >= 1");
}

double utilization(double rate, int n, const AutoscalerConfig& cfg)
{
    if (n < 1)
        throw std::invalid_argument("utilization: instance count must be >= 1");
    if (rate < 0)
        throw std::invalid_argument("utilization: rate must be >= 0");
    return std::min(rate / (static_cast<double>(n) * cfg.capacity_per_instance), 1.0);
}

ScalerState step(ScalerState state, SimTime now, double rate, const AutoscalerConfig& cfg)
{
    auto& window = state.util_window;
    if (!window.empty() && !(now > window.back().time))
        throw std::invalid_argument("autoscaler step: time must increase");

    window.push_back({now, utilization(rate, state.n, cfg)});
    // Each sample stands for the tick that ends at its timestamp.
    while (!window.empty() && window.front().time <= now - cfg.window)
        window.pop_front();

    const SimTime covered = now - window.front().time + cfg.tick;
    if (covered < cfg.window)
        return state;

    double sum = 0;
    for (const auto& s : window)
        sum += s.utilization;
    const double avg = sum / static_cast<double>(window.size());

    const int n = state.n;
    if (avg > cfg.upscale_threshold) {
        state.n = n + 1;
        window.clear();
    } else if (n > cfg.min_instances
               && avg < cfg.upscale_threshold * static_cast<double>(n - 1) / static_cast<double>(n)) {
        state.n = n - 1;
        window.clear();
    }
    return state;
}

traces::DemandSeries derive_demand(const traces::RequestSeries& requests,
                                   const AutoscalerConfig& cfg)
{
    cfg.validate();
    if (requests.samples.empty())
        throw std::invalid_argument("derive_demand: empty request series");

    traces::DemandSeries out;
    out.duration = requests.duration;
    auto state = ScalerState::initial(cfg);
    out.samples.push_back({0, state.n});

    std::size_t idx = 0;
    const auto& samples = requests.samples;
    // Integer tick counter keeps tick times free of accumulated rounding.
    for (long k = 1;; ++k) {
        const SimTime t = static_cast<SimTime>(k) * cfg.tick;
        if (t > requests.duration)
            break;
        const SimTime from = t - cfg.tick;
        while (idx + 1 < samples.size() && samples[idx + 1].timestamp <= from)
            ++idx;
        const int before = state.n;
        state = step(std::move(state), t, samples[idx].rate, cfg);
        if (state.n != before)
            out.samples.push_back({t, state.n});
    }
    return out;
}

double calibrate_capacity(const traces::RequestSeries& requests, AutoscalerConfig cfg,
                          int target_peak)
{
    if (target_peak < cfg.min_instances)
        throw std::invalid_argument("calibrate_capacity: target below min_instances");

    double max_rate = 0;
    for (const auto& s : requests.samples)
        max_rate = std::max(max_rate, s.rate);
    if (max_rate <= 0)
        throw std::runtime_error("calibrate_capacity: request series carries no load");

    auto peak_at = [&](double capacity) {
        cfg.capacity_per_instance = capacity;
        return derive_demand(requests, cfg).peak();
    };

    // Peak demand falls as capacity grows. Bracket then bisect on log scale.
    double lo = max_rate / (cfg.upscale_threshold * (target_peak + 1));
    double hi = std::max(max_rate / cfg.upscale_threshold, lo * 2);
    while (peak_at(lo) < target_peak)
        lo /= 2;
    while (peak_at(hi) > target_peak)
        hi *= 2;
    for (int i = 0; i < 200; ++i) {
        const double mid = std::sqrt(lo * hi);
        const int p = peak_at(mid);
        if (p == target_peak)
            return mid;
        if (p > target_peak)
            lo = mid;
        else
            hi = mid;
        if (hi / lo - 1 < 1e-12)
            break;
    }
    if (peak_at(hi) == target_peak)
        return hi;
    throw std::runtime_error("calibrate_capacity: no capacity gives peak "
                             + std::to_string(target_peak));
}

} // namespace consolidsim::autoscaler
