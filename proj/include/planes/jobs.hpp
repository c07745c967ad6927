#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

// Bounded task-list parallelism. Tasks must be independent; the first
// exception (by task index) is rethrown after all workers finish, so results
// and errors do not depend on the worker count.

namespace planes {

inline void run_parallel(const std::vector<std::function<void()>>& tasks, int jobs) {
  if (jobs < 1) jobs = 1;
  if (jobs == 1 || tasks.size() <= 1) {
    for (const auto& t : tasks) t();
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(tasks.size());
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      try {
        tasks[i]();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const int workers = std::min<int>(jobs, static_cast<int>(tasks.size()));
  pool.reserve(static_cast<std::size_t>(workers));
  for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace planes
