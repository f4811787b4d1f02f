#include "i3kit/parallel.hpp"

#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace i3kit {

void parallel_for(size_t count, int threads, const std::function<void(size_t)>& fn) {
  if (count == 0) return;
  size_t workers = threads <= 1 ? 1 : std::min<size_t>(static_cast<size_t>(threads), count);
  if (workers == 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }

  std::mutex error_mutex;
  std::exception_ptr first_error;
  auto run_chunk = [&](size_t begin, size_t end) {
    try {
      for (size_t i = begin; i < end; ++i) fn(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  size_t chunk = (count + workers - 1) / workers;
  for (size_t w = 0; w < workers; ++w) {
    size_t begin = w * chunk;
    size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back(run_chunk, begin, end);
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace i3kit
