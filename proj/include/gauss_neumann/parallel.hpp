#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace gauss_neumann {

/// Worker cap from GAUSS_NEUMANN_THREADS, else the hardware concurrency.
int worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads. Indices are
/// handed out in contiguous blocks, so results written by index are
/// independent of the thread count. The exception of the lowest failing
/// index is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

template <class R, class F>
std::vector<R> parallel_map(std::size_t n, F&& f)
{
    std::vector<R> out(n);
    parallel_for(n, [&](std::size_t i) { out[i] = f(i); });
    return out;
}

} // namespace gauss_neumann
