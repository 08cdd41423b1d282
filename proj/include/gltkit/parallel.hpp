#pragma once

#include <cstddef>
#include <functional>

namespace gltkit {

/// Worker count: GLTKIT_THREADS when set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
std::size_t thread_count();

/// Runs body(0) ... body(n-1) on up to thread_count() threads. Exceptions are
/// rethrown on the caller (the one from the lowest index wins).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace gltkit
