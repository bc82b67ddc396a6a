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

#include "oracle/synthetic.hpp"

#include <gtest/gtest.h>

#include <json.hpp>

#include <algorithm>
#include <random>
#include <sstream>

using namespace consolidsim;
using namespace consolidsim::metrics;

namespace {

JobOutcome done(JobId id, SimTime submit, SimTime start, SimTime end)
{
    JobOutcome o;
    o.job_id = id;
    o.submit = submit;
    o.runtime = end - start;
    o.start = start;
    o.end = end;
    o.state = JobState::Completed;
    return o;
}

JobOutcome killed(JobId id, SimTime at)
{
    JobOutcome o;
    o.job_id = id;
    o.runtime = 1000;
    o.start = 0;
    o.end = at;
    o.state = JobState::Killed;
    return o;
}

traces::DemandSeries flat(int n, SimTime duration)
{
    return {{{0, n}}, duration};
}

RunContext ctx(int size, Mode mode, SimTime end_time)
{
    RunContext c;
    c.config_size = size;
    c.mode = mode;
    c.ws_capacity = size;
    c.end_time = end_time;
    return c;
}

RunReport report(int size, Mode mode, int completed, std::uint64_t hash = 7)
{
    RunReport r;
    r.config_size = size;
    r.mode = mode;
    r.completed_count = completed;
    r.trace_hash = hash;
    return r;
}

} // namespace

TEST(Finalize, TurnaroundFromSubmission)
{
    const auto r = finalize({done(1, 10, 10, 110)}, {{0, 1}}, {}, flat(1, 110), ctx(2, Mode::Dynamic, 110));
    EXPECT_EQ(r.completed_count, 1);
    EXPECT_EQ(r.mean_turnaround, 100.0);
    EXPECT_EQ(r.turnaround_reciprocal, 0.01);
    EXPECT_DOUBLE_EQ(r.ws_demand_satisfaction, 1.0);
    EXPECT_EQ(r.unmet_demand_integral, 0);
}

TEST(Finalize, TurnaroundIncludesQueueWait)
{
    const auto r = finalize({done(1, 0, 10, 110), done(2, 0, 0, 50)}, {{0, 1}}, {}, flat(1, 110),
                            ctx(2, Mode::Dynamic, 110));
    EXPECT_EQ(r.mean_turnaround, 80.0);
}

TEST(Finalize, AllKilledLeavesTurnaroundAbsent)
{
    const auto r = finalize({killed(1, 5), killed(2, 9)}, {{0, 1}}, {}, flat(1, 10),
                            ctx(3, Mode::Dynamic, 10));
    EXPECT_EQ(r.completed_count, 0);
    EXPECT_EQ(r.killed_count, 2);
    EXPECT_FALSE(r.mean_turnaround.has_value());
    EXPECT_FALSE(r.turnaround_reciprocal.has_value());
    const auto j = nlohmann::json::parse(report_to_json(r));
    EXPECT_TRUE(j["mean_turnaround"].is_null());
}

TEST(Finalize, UnfinishedJobsNeedHorizon)
{
    JobOutcome queued;
    queued.job_id = 3;
    EXPECT_THROW(finalize({queued}, {}, {}, flat(1, 1), ctx(2, Mode::Dynamic, 1)), InvariantViolation);
    auto c = ctx(2, Mode::Dynamic, 1);
    c.horizon = 1;
    const auto r = finalize({queued, done(4, 0, 0, 5)}, {}, {}, flat(1, 1), c);
    EXPECT_EQ(r.unfinished_count, 2);
    EXPECT_EQ(r.completed_total, 1);
}

TEST(Finalize, DemandIntegrals)
{
    // Demand 2 on [0,10), 4 on [10,20); holdings reach 4 at t=15.
    const traces::DemandSeries d{{{0, 2}, {10, 4}}, 20};
    const auto r = finalize({}, {{0, 2}, {15, 4}}, {}, d, ctx(3, Mode::Dynamic, 20));
    EXPECT_DOUBLE_EQ(r.unmet_demand_integral, 10.0);
    EXPECT_DOUBLE_EQ(r.infeasible_demand_integral, 10.0);
    EXPECT_DOUBLE_EQ(r.ws_demand_satisfaction, 50.0 / 60.0);
}

TEST(Finalize, SatisfactionIsOneExactlyWhenNothingUnmet)
{
    std::mt19937_64 rng(oracle::base_seed() + 60);
    auto pick = [&rng](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    for (int round = 0; round < 1000; ++round) {
        traces::DemandSeries d;
        std::vector<WsPoint> ws;
        SimTime t = 0;
        const int steps = pick(1, 6);
        for (int i = 0; i < steps; ++i) {
            d.samples.push_back({t, pick(1, 5)});
            ws.push_back({t + pick(0, 3), pick(0, 5)});
            t += pick(1, 20);
        }
        d.duration = t;
        const auto r = finalize({}, ws, {}, d, ctx(5, Mode::Dynamic, t));
        ASSERT_GE(r.ws_demand_satisfaction, 0.0);
        ASSERT_LE(r.ws_demand_satisfaction, 1.0);
        ASSERT_EQ(r.unmet_demand_integral == 0, r.ws_demand_satisfaction == 1.0) << round;
    }
}

TEST(Compare, CostRatioAgainstStaticBaseline)
{
    const std::vector<RunReport> runs{report(208, Mode::Static, 100), report(160, Mode::Dynamic, 104)};
    const auto cmp = compare(runs);
    EXPECT_EQ(cmp.baseline_size, 208);
    ASSERT_EQ(cmp.rows.size(), 2u);
    EXPECT_TRUE(cmp.rows[0].baseline);
    EXPECT_EQ(cmp.rows[1].config_size, 160);
    EXPECT_NEAR(cmp.rows[1].cost_ratio, 0.769, 5e-4);
    EXPECT_EQ(cmp.rows[1].delta_completed, 4);

    std::ostringstream csv;
    write_comparison_csv(csv, cmp);
    EXPECT_NE(csv.str().find(",0.769,"), std::string::npos) << csv.str();
}

TEST(Compare, Preconditions)
{
    const std::vector<RunReport> one{report(208, Mode::Static, 1)};
    EXPECT_THROW(compare(one), std::invalid_argument);
    const std::vector<RunReport> mixed{report(208, Mode::Static, 1, 1), report(160, Mode::Dynamic, 1, 2)};
    EXPECT_THROW(compare(mixed), IncomparableRunsError);
}

TEST(Compare, LargestIsBaselineWithoutStatic)
{
    const std::vector<RunReport> runs{report(150, Mode::Dynamic, 1), report(200, Mode::Dynamic, 3),
                                      report(170, Mode::Dynamic, 2)};
    const auto cmp = compare(runs);
    EXPECT_EQ(cmp.baseline_size, 200);
    EXPECT_EQ(cmp.rows[0].config_size, 200);
    EXPECT_EQ(cmp.rows[1].config_size, 170);
    EXPECT_EQ(cmp.rows[2].config_size, 150);
}

TEST(Compare, PermutationInvariant)
{
    std::vector<RunReport> runs{report(208, Mode::Static, 10)};
    for (int size : {200, 190, 180, 170, 160, 150})
        runs.push_back(report(size, Mode::Dynamic, size / 10));
    std::ostringstream want;
    write_comparison_csv(want, compare(runs));

    std::mt19937_64 rng(oracle::base_seed() + 61);
    for (int round = 0; round < 200; ++round) {
        std::shuffle(runs.begin(), runs.end(), rng);
        std::ostringstream got;
        write_comparison_csv(got, compare(runs));
        ASSERT_EQ(got.str(), want.str());
    }
}

TEST(Emit, CsvShapes)
{
    auto r = finalize({done(1, 0, 0, 10)}, {{0, 1}}, {{0, 1, 1, 0}, {10, 0, 1, 1}}, flat(1, 10),
                      ctx(2, Mode::Dynamic, 10));
    std::ostringstream util, jobs, rows;
    write_utilization_csv(util, r);
    EXPECT_EQ(util.str(), "time,st,ws,idle\n0,1,1,0\n10,0,1,1\n");
    write_outcomes_csv(jobs, r);
    EXPECT_EQ(jobs.str(), "job_id,size,submit,start,end,state\n1,1,0,0,10,completed\n");
    const std::vector<RunReport> one{r};
    write_report_csv(rows, one);
    EXPECT_NE(rows.str().find("\n2,dynamic,,1,1,0,0,1,10,0.1,1,0,0,10\n"), std::string::npos) << rows.str();
}
