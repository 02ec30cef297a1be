#include "graphtex/parallel.hpp"

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace graphtex {

unsigned default_thread_count() noexcept {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

void parallel_for(int count, unsigned threads, const std::function<void(int)>& body) {
  if (count <= 0) return;
  unsigned workers = threads == 0 ? default_thread_count() : threads;
  workers = std::min<unsigned>(workers, static_cast<unsigned>(count));
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }

  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const int block = (count + static_cast<int>(workers) - 1) / static_cast<int>(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const int begin = static_cast<int>(w) * block;
    const int end = std::min(count, begin + block);
    pool.emplace_back([&, w, begin, end] {
      try {
        for (int i = begin; i < end; ++i) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace graphtex
