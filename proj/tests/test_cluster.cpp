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

#include <consolidsim/cluster.hpp>

#include "oracle/synthetic.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace consolidsim;
using namespace consolidsim::cluster;

TEST(Allocate, MovesIdleNodesToTier)
{
    auto s = ClusterState::fresh(3);
    const auto moved = allocate(s, Target::ST, 3);
    EXPECT_EQ(moved, (NodeSet{0, 1, 2}));
    EXPECT_EQ(s.st_free, (NodeSet{0, 1, 2}));
    EXPECT_TRUE(s.idle.empty());
    EXPECT_TRUE(conservation_check(s));
}

TEST(Allocate, ZeroIsNoop)
{
    auto s = ClusterState::fresh(4);
    EXPECT_TRUE(allocate(s, Target::WS, 0).empty());
    EXPECT_EQ(s.idle.size(), 4u);
    EXPECT_TRUE(s.ws_held.empty());
}

TEST(Allocate, InsufficientIdle)
{
    auto s = ClusterState::fresh(6);
    allocate(s, Target::ST, 5);
    EXPECT_EQ(s.idle, (NodeSet{5}));
    EXPECT_THROW(allocate(s, Target::WS, 2), InsufficientIdleError);
    EXPECT_TRUE(conservation_check(s));
}

TEST(BindJob, RoundTripRestoresPartition)
{
    auto s = ClusterState::fresh(4);
    allocate(s, Target::ST, 2);
    const auto before = s;
    bind_job(s, 1, 2);
    EXPECT_TRUE(s.st_free.empty());
    EXPECT_EQ(s.st_busy.at(1).size(), 2u);
    EXPECT_TRUE(conservation_check(s));
    release_job(s, 1);
    EXPECT_EQ(s.st_free, before.st_free);
    EXPECT_TRUE(s.st_busy.empty());
}

TEST(BindJob, Errors)
{
    auto s = ClusterState::fresh(4);
    allocate(s, Target::ST, 2);
    EXPECT_THROW(bind_job(s, 2, 3), InsufficientIdleError);
    EXPECT_THROW(release_job(s, 99), NotFoundError);
    bind_job(s, 2, 1);
    EXPECT_THROW(bind_job(s, 2, 1), InvariantViolation);
}

TEST(Conservation, DetectsDoubleOwnership)
{
    EXPECT_TRUE(conservation_check(ClusterState::fresh(10)));
    auto s = ClusterState::fresh(10);
    s.ws_held.insert(3);
    EXPECT_FALSE(conservation_check(s));
    auto missing = ClusterState::fresh(10);
    missing.idle.erase(7);
    EXPECT_FALSE(conservation_check(missing));
    auto empty_job = ClusterState::fresh(2);
    empty_job.st_busy[5] = {};
    EXPECT_FALSE(conservation_check(empty_job));
}

TEST(Transit, CountsTowardPartition)
{
    auto s = ClusterState::fresh(5);
    allocate(s, Target::ST, 5);
    const auto batch = begin_transit(s, 3, 105);
    EXPECT_EQ(s.in_transit_count(), 3);
    EXPECT_TRUE(conservation_check(s, 100));
    EXPECT_FALSE(conservation_check(s, 106)) << "overdue batch";
    complete_transit(s, batch);
    EXPECT_EQ(s.ws_held.size(), 3u);
    EXPECT_TRUE(complete_transit(s, batch).empty());
    EXPECT_TRUE(conservation_check(s, 106));
}

TEST(Transit, CancelMostRecentFirst)
{
    auto s = ClusterState::fresh(6);
    allocate(s, Target::ST, 6);
    begin_transit(s, 2, 10);
    begin_transit(s, 3, 12);
    EXPECT_EQ(cancel_transit(s, 4), 4);
    ASSERT_EQ(s.in_transit.size(), 1u);
    EXPECT_EQ(s.in_transit[0].nodes.size(), 1u);
    EXPECT_EQ(s.in_transit[0].ready_time, 10);
    EXPECT_EQ(s.idle.size(), 4u);
    EXPECT_EQ(cancel_transit(s, 5), 1);
    EXPECT_TRUE(conservation_check(s));
}

TEST(Conservation, HoldsUnderRandomOperations)
{
    std::mt19937_64 rng(oracle::base_seed() + 20);
    auto pick = [&rng](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    for (int round = 0; round < 200; ++round) {
        auto s = ClusterState::fresh(pick(1, 30));
        JobId next = 1;
        for (int op = 0; op < 200; ++op) {
            switch (pick(0, 6)) {
            case 0:
                allocate(s, pick(0, 1) ? Target::ST : Target::WS, pick(0, static_cast<int>(s.idle.size())));
                break;
            case 1:
                if (!s.st_free.empty())
                    bind_job(s, next++, pick(1, static_cast<int>(s.st_free.size())));
                break;
            case 2:
                if (!s.st_busy.empty())
                    release_job(s, s.st_busy.begin()->first);
                break;
            case 3:
                if (!s.st_free.empty())
                    begin_transit(s, pick(1, static_cast<int>(s.st_free.size())), op + 5);
                break;
            case 4:
                if (!s.in_transit.empty())
                    complete_transit(s, s.in_transit.front().batch);
                break;
            case 5:
                cancel_transit(s, pick(0, 4));
                break;
            case 6:
                release_to_idle(s, pick(0, 1) ? Target::ST : Target::WS, 0);
                if (!s.ws_held.empty())
                    release_to_idle(s, Target::WS, pick(0, static_cast<int>(s.ws_held.size())));
                break;
            }
            const int sum = static_cast<int>(s.idle.size() + s.st_free.size() + s.ws_held.size())
                          + s.st_busy_count() + s.in_transit_count();
            ASSERT_EQ(sum, s.total_nodes);
            ASSERT_TRUE(conservation_check(s));
        }
    }
}
