#include "motor/rng.hpp"

namespace motor::rng {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

std::uint64_t fnv1a(std::string_view s, std::uint64_t h) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::uint64_t hash_key(std::uint64_t seed, std::string_view a, std::string_view b) {
  std::uint64_t h = fnv1a(b, fnv1a(a, 0xcbf29ce484222325ULL ^ mix64(seed)));
  return mix64(h);
}

std::uint64_t hash_key(std::uint64_t seed, std::uint64_t a, std::string_view b) {
  std::uint64_t h = fnv1a(b, 0xcbf29ce484222325ULL ^ mix64(seed) ^ mix64(a));
  return mix64(h);
}

double uniform01(std::uint64_t h) {
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

int sample_index(std::span<const double> probs, double u) {
  double acc = 0;
  for (size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return static_cast<int>(i);
  }
  return static_cast<int>(probs.size()) - 1;
}

}  // namespace motor::rng
