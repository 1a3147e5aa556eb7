#ifndef WORKLAB_PARALLEL_HPP
#define WORKLAB_PARALLEL_HPP

#include <functional>

namespace worklab {

// Worker cap: WORKLAB_THREADS if set, else hardware concurrency.
int worker_count();

// Static chunking over [0, n); f(i) must only write to slots owned by index i,
// so results are deterministic regardless of the thread count.
void parallel_for(int n, const std::function<void(int)>& f);

} // namespace worklab

#endif
