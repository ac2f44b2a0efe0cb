#pragma once

#include <cstdint>
#include <span>
#include <string_view>

namespace motor {

// Counter-based stream: every draw is a pure hash of (seed, key parts), so
// sampling is order-independent and parallel-safe.
namespace rng {

std::uint64_t mix64(std::uint64_t x);
std::uint64_t hash_key(std::uint64_t seed, std::string_view a, std::string_view b);
std::uint64_t hash_key(std::uint64_t seed, std::uint64_t a, std::string_view b);

double uniform01(std::uint64_t h);

// Inverse-CDF draw from a probability vector.
int sample_index(std::span<const double> probs, double u);

}  // namespace rng
}  // namespace motor
