#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace cfree {

/// Worker cap: CFREE_THREADS if set and positive, else hardware concurrency.
int worker_count();

/// Overrides the worker count for this process (0 restores the default).
void set_worker_count(int workers);

/// Calls body(i) for i in [0, n) over contiguous chunks on up to
/// worker_count() threads. Nested calls from inside a worker run inline.
/// The body must only write to per-index state; results are therefore
/// independent of the number of workers.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  std::size_t min_chunk = 64);

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Derives an independent stream seed from a base seed and a key path.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                          std::uint64_t b = 0, std::uint64_t c = 0);

}  // namespace cfree
