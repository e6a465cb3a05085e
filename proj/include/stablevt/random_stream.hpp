#pragma once

#include <cstdint>

namespace stablevt {

/// Counter-based 64-bit generator. Draw i of a stream is a fixed mixing
/// function of (key, i), so a child stream is fully determined by the
/// master seed and its index.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) noexcept;

  /// Stream number `index` derived from `master_seed`.
  static RandomStream child(std::uint64_t master_seed,
                            std::uint64_t index) noexcept;

  std::uint64_t next_u64() noexcept;

  /// Uniform on the open interval (0, 1); never returns 0 or 1.
  double uniform() noexcept;

  /// Standard exponential, strictly positive.
  double exponential() noexcept;

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace stablevt
