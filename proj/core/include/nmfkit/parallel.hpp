#pragma once

#include <functional>

namespace nmfkit {

/// Worker count: NMFKIT_THREADS if set and positive, else hardware cores.
int thread_budget();

/// Run fn(i) for i in [0, count), spread over the thread budget. The caller
/// is responsible for making the work items independent; results must be
/// written to distinct slots so the outcome is schedule-independent.
void parallel_for(int count, const std::function<void(int)>& fn);

}  // namespace nmfkit
