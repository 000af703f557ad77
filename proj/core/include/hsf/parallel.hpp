#pragma once

#include <cstddef>
#include <functional>

namespace hsf {

// Worker count: min(hardware, HSF_THREADS) with HSF_THREADS read once.
int worker_count();

// Static block partition; f(begin, end) runs on [begin, end). Results must be
// merged deterministically by the caller (each worker owns a disjoint range).
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& f);

}  // namespace hsf
