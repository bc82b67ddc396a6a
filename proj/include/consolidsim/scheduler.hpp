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

#ifndef CONSOLIDSIM_SCHEDULER_HPP
#define CONSOLIDSIM_SCHEDULER_HPP

#include <consolidsim/types.hpp>

#include <span>
#include <vector>

namespace consolidsim::scheduler {

struct PendingJob {
    JobId job_id = 0;
    int size = 1;
    SimTime runtime = 0;
    SimTime submit_time = 0;
};

/// Pending batch jobs ordered by (submit_time, job_id).
class JobQueue {
public:
    /// Throws InvariantViolation if the id is already queued.
    void enqueue(const PendingJob& job);

    /// Remove the given ids. Throws InvariantViolation if any is missing.
    void dequeue_selected(std::span<const JobId> ids);

    const std::vector<PendingJob>& pending() const { return pending_; }
    bool empty() const { return pending_.empty(); }
    std::size_t size() const { return pending_.size(); }

private:
    std::vector<PendingJob> pending_;
};

/// First-Fit pass: scan in queue order and select every job that fits in
/// what is still free, skipping jobs that do not. With `strict_fifo` the
/// scan stops at the first job that does not fit.
std::vector<JobId> schedule_pass(const JobQueue& queue, int free_nodes, bool strict_fifo = false);

} // namespace consolidsim::scheduler

#endif // CONSOLIDSIM_SCHEDULER_HPP
