#include "proxcvx/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <string>

namespace proxcvx {

namespace {
// nested regions run sequentially inside the worker that owns them
thread_local bool in_worker = false;
}  // namespace

unsigned worker_count() {
  if (const char* env = std::getenv("PROXCVX_THREADS")) {
    try {
      const long v = std::stol(env);
      return v <= 0 ? 1u : static_cast<unsigned>(v);
    } catch (const std::exception&) {
      return 1u;
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, std::size_t min_block) {
  const std::size_t workers =
      std::min<std::size_t>(worker_count(), (n + min_block - 1) / std::max<std::size_t>(min_block, 1));
  if (workers <= 1 || in_worker) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::jthread> threads;
  threads.reserve(workers);
  const std::size_t block = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * block;
    const std::size_t end = std::min(n, begin + block);
    if (begin >= end) break;
    threads.emplace_back([&, begin, end] {
      in_worker = true;
      try {
        for (std::size_t i = begin; i < end; ++i) body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  threads.clear();
  if (error) std::rethrow_exception(error);
}

}  // namespace proxcvx
