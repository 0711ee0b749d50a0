#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace qemit {

struct JobOutcome {
    std::size_t index = 0;
    bool ok = true;
    std::string error;
};

// Run n jobs on a bounded worker pool. Results are stored by index, so
// aggregation order is deterministic regardless of completion order.
// Worker exceptions are captured per job, never propagated mid-run.
// workers == 0 picks the logical core count; the SIM_WORKERS environment
// variable overrides a zero value.
std::vector<JobOutcome> run_indexed(std::size_t n, const std::function<void(std::size_t)>& job,
                                    int workers = 0);

int resolve_worker_count(int requested);

}  // namespace qemit
