#include "qemit/sweep.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>

namespace qemit {

int resolve_worker_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("SIM_WORKERS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

std::vector<JobOutcome> run_indexed(std::size_t n, const std::function<void(std::size_t)>& job,
                                    int workers) {
    std::vector<JobOutcome> outcomes(n);
    for (std::size_t i = 0; i < n; ++i) outcomes[i].index = i;
    if (n == 0) return outcomes;

    const int pool = std::min<std::size_t>(resolve_worker_count(workers), n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                job(i);
            } catch (const std::exception& e) {
                outcomes[i].ok = false;
                outcomes[i].error = e.what();
            } catch (...) {
                outcomes[i].ok = false;
                outcomes[i].error = "unknown error";
            }
        }
    };

    if (pool <= 1) {
        worker();
        return outcomes;
    }
    std::vector<std::thread> threads;
    threads.reserve(pool);
    for (int t = 0; t < pool; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    return outcomes;
}

}  // namespace qemit
