#pragma once

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace banditlab {

// Runs fn(0..runs-1) on up to `threads` workers (threads < 1 means all
// cores). The first exception wins and is rethrown after all workers join;
// callers index results by run id, so scheduling never affects output.
template <typename Fn>
void parallel_for_runs(int runs, int threads, Fn&& fn) {
  if (runs <= 0) return;
  if (threads < 1) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
  }
  threads = std::min(threads, runs);

  if (threads == 1) {
    for (int i = 0; i < runs; ++i) fn(i);
    return;
  }

  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&]() {
    for (;;) {
      const int run_id = next.fetch_add(1);
      if (run_id >= runs || failed.load()) return;
      try {
        fn(run_id);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (std::thread& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace banditlab
