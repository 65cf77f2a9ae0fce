#pragma once

#include <cstddef>
#include <functional>

namespace circreg {

/// Run body(0) .. body(count - 1) on up to `threads` worker threads (0 means
/// hardware concurrency). Indices are claimed dynamically, so results must be
/// written to per-index slots. If bodies throw, the exception from the lowest
/// failing index is rethrown after all workers finish.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace circreg
