#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace czsim {

/// Worker count from CZSIM_WORKERS, falling back to hardware concurrency.
std::size_t worker_count();

/// Runs task(i) for i in [0, n) on a pool of `workers` threads. Each index is
/// handled exactly once; exceptions escaping a task are rethrown after joining.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& task,
                  std::size_t workers = 0);

/// Results are stored by index, so the output order never depends on scheduling.
template <typename T, typename F>
std::vector<T> parallel_map(std::size_t n, F&& f, std::size_t workers = 0) {
    std::vector<T> out(n);
    parallel_for(n, [&](std::size_t i) { out[i] = f(i); }, workers);
    return out;
}

}  // namespace czsim
