#pragma once

#include <cstddef>
#include <functional>

namespace chebias {

// Worker count from an explicit request, else CHEBIAS_WORKERS, else 1.
int resolve_workers(int requested = 0);

// Runs task(i) for i in [0, n) on up to `workers` threads. Tasks must write only
// to their own output slot; callers fold results in index order, so output does
// not depend on the worker count. The first exception is rethrown.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& task);

}  // namespace chebias
