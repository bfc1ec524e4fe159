#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>

namespace momentumlab::parallel {

/// Worker count from MOMENTUMLAB_THREADS (integer >= 1); defaults to the
/// hardware concurrency. Invalid values fall back to 1.
unsigned thread_count();

/// Runs body(i) for i in [0, n) on up to thread_count() threads. Each index
/// is processed exactly once; callers write results into slot i so output
/// does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

/// Independent generator for (seed, stream) via splitmix64 counter mixing.
std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t stream);

}  // namespace momentumlab::parallel
