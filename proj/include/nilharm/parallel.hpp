#pragma once

#include <functional>

namespace nilharm {

// NILHARM_THREADS caps the worker count; default is the hardware concurrency
int thread_count();

// runs fn(i) for i in [0, n); each task owns its output slot, so results do not depend on scheduling
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace nilharm
