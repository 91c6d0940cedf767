#pragma once

#include <cstddef>
#include <functional>

namespace clusterkit {

/// Number of worker threads to use: hardware concurrency capped by the
/// CLUSTERKIT_THREADS environment variable (always at least 1).
std::size_t thread_budget();

/// Runs body(i) for i in [0, count). Tasks must be independent; when more
/// than one thread is available they run in parallel, otherwise inline.
/// Callers own any result slots, so reductions stay deterministic.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace clusterkit
