#include "stablevt/random_stream.hpp"

#include <cmath>

namespace stablevt {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed) noexcept : key_(mix64(seed)) {}

RandomStream RandomStream::child(std::uint64_t master_seed,
                                 std::uint64_t index) noexcept {
  return RandomStream(mix64(master_seed) ^ mix64(index * kGolden + 1));
}

std::uint64_t RandomStream::next_u64() noexcept {
  ++counter_;
  return mix64(key_ + counter_ * kGolden);
}

double RandomStream::uniform() noexcept {
  // 53 random bits, offset by half an ulp so 0 is unreachable.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::exponential() noexcept { return -std::log(uniform()); }

}  // namespace stablevt
