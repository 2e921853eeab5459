#include "qtgi/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qtgi {

namespace {
std::atomic<unsigned> g_workers{1};
}  // namespace

unsigned worker_count() { return g_workers.load(std::memory_order_relaxed); }

void set_worker_count(unsigned n) { g_workers.store(n == 0 ? 1 : n, std::memory_order_relaxed); }

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& task) {
  const std::size_t workers = std::min<std::size_t>(worker_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      task(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::size_t failure_index = count;
  std::mutex failure_mutex;
  auto body = [&] {
    for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (i < failure_index) {
          failure = std::current_exception();
          failure_index = i;
        }
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) {
      pool.emplace_back(body);
    }
    body();
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
}

}  // namespace qtgi
