#pragma once

#include <functional>

namespace graphtex {

/// Number of workers used when a caller passes threads = 0.
unsigned default_thread_count() noexcept;

/// Runs body(i) for i in [0, count) on up to `threads` workers
/// (0 = default_thread_count()). Iterations are split into contiguous
/// blocks; the body must only write state owned by index i.
void parallel_for(int count, unsigned threads, const std::function<void(int)>& body);

}  // namespace graphtex
