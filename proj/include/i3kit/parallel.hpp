#pragma once

#include <cstddef>
#include <functional>

namespace i3kit {

/// Runs fn(0..count-1) over `threads` workers with static chunking. Tasks
/// must be independent (each index owns its output slot); merge order is the
/// caller's index order, so results do not depend on the thread count.
/// threads <= 1 runs inline.
void parallel_for(size_t count, int threads, const std::function<void(size_t)>& fn);

}  // namespace i3kit
