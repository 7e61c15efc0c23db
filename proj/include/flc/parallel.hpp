#ifndef FLC_PARALLEL_HPP
#define FLC_PARALLEL_HPP

#include <functional>

#include "flc/types.hpp"

namespace flc {

/// Worker cap: FLC_THREADS env var, overridable via set_max_threads (CLI --threads).
int max_threads();
void set_max_threads(int n);

/// Runs f(begin, end) over a partition of [0, n). Chunks are fixed by n and the
/// thread cap alone, so any per-chunk outputs can be combined in index order.
void parallel_chunks(Index n, const std::function<void(Index, Index)>& f);

}  // namespace flc

#endif
