#pragma once

#include <cstdint>
#include <functional>

namespace mlk {

// Worker count: MLK_THREADS if set to a positive integer, else the hardware
// concurrency.
int ThreadCount();

// Calls body(block) for every block in [0, blocks), spread over ThreadCount()
// threads.  The first exception thrown by any block is rethrown.
void ParallelFor(std::int64_t blocks, std::function<void(std::int64_t)> const& body);

}  // namespace mlk
