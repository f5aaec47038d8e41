#pragma once

// Counter-keyed random streams. Every draw is addressed by (seed, stream,
// index) so results never depend on evaluation order or thread schedule.

#include <cstdint>
#include <string_view>

namespace qcc {

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a64(std::string_view text);

/// Key for draw `index` of the named stream under `seed`.
std::uint64_t stream_key(std::uint64_t seed, std::string_view stream, std::uint64_t index);

/// One Poisson variate with the given mean from the keyed stream. A mean of
/// zero (or below) always yields zero.
std::int64_t poisson_sample(double mean, std::uint64_t key);

}  // namespace qcc
