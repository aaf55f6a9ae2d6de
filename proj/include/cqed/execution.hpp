#pragma once

#include <omp.h>

namespace cqed {

/// Selects the OpenMP kernel or the serial reference loop. Each grid point is
/// computed independently, so thread count never changes the result; the
/// transformed path's parallel kernel is factored differently from its serial
/// reference and agrees to rounding.
enum class Execution { serial, parallel };

inline int worker_count(Execution exec) { return exec == Execution::parallel ? omp_get_max_threads() : 1; }

}  // namespace cqed
