#pragma once

#include <cstddef>
#include <functional>

namespace ffproj {

/// Caps worker threads used by sweeps; 0 restores the hardware default.
void set_thread_limit(unsigned threads);
unsigned thread_limit();

/// Runs body(i) for i in [0, count). Callers write results by index, so output
/// does not depend on scheduling. The first exception thrown is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace ffproj
