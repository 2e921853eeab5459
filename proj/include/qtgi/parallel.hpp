#pragma once

#include <cstddef>
#include <functional>

namespace qtgi {

/// Number of workers used for per-frequency work. Results never depend on it:
/// every task writes its own slot and no reduction crosses tasks.
unsigned worker_count();
/// 0 restores the default of 1.
void set_worker_count(unsigned n);

/// Runs task(0) .. task(count - 1) on up to worker_count() threads.
/// If tasks throw, the exception of the lowest failing index is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& task);

}  // namespace qtgi
