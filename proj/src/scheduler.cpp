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

#include <consolidsim/scheduler.hpp>

#include <algorithm>
#include <string>
#include <tuple>
#include <unordered_set>

namespace consolidsim::scheduler {

void JobQueue::enqueue(const PendingJob& job)
{
    for (const auto& p : pending_)
        if (p.job_id == job.job_id)
            throw InvariantViolation("enqueue: job " + std::to_string(job.job_id)
                                     + " already queued");
    auto pos = std::upper_bound(pending_.begin(), pending_.end(), job,
                                [](const PendingJob& a, const PendingJob& b) {
                                    return std::tie(a.submit_time, a.job_id)
                                         < std::tie(b.submit_time, b.job_id);
                                });
    pending_.insert(pos, job);
}

void JobQueue::dequeue_selected(std::span<const JobId> ids)
{
    std::unordered_set<JobId> wanted(ids.begin(), ids.end());
    if (wanted.size() != ids.size())
        throw InvariantViolation("dequeue_selected: duplicate id");
    std::size_t found = 0;
    for (const auto& p : pending_)
        found += wanted.count(p.job_id);
    if (found != wanted.size())
        throw InvariantViolation("dequeue_selected: id not queued");
    std::erase_if(pending_, [&](const PendingJob& p) { return wanted.count(p.job_id) > 0; });
}

std::vector<JobId> schedule_pass(const JobQueue& queue, int free_nodes, bool strict_fifo)
{
    if (free_nodes < 0)
        throw std::invalid_argument("schedule_pass: negative free count");
    std::vector<JobId> selected;
    int remaining = free_nodes;
    for (const auto& job : queue.pending()) {
        if (job.size <= remaining) {
            selected.push_back(job.job_id);
            remaining -= job.size;
        } else if (strict_fifo) {
            break;
        }
        if (remaining == 0)
            break;
    }
    return selected;
}

} // namespace consolidsim::scheduler
