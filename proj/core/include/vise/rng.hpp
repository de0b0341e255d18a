#pragma once

// Counter-based random streams. A stream is identified by (seed, stream id)
// and its i-th 64-bit output is a pure function of (seed, stream id, i), so
// results never depend on how trials are scheduled across threads.

#include <cstdint>
#include <limits>

namespace vise::rng {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Uniform random bit generator over a counter: output i is
/// mix64(key + (i + 1) * golden). Satisfies std::uniform_random_bit_generator.
class CounterStream {
 public:
  using result_type = std::uint64_t;

  CounterStream(std::uint64_t seed, std::uint64_t stream_id) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept { return at(counter_++); }

  /// Output at an absolute position, without touching the counter.
  result_type at(std::uint64_t index) const noexcept {
    return mix64(key_ + (index + 1) * kGolden);
  }

  void discard(std::uint64_t count) noexcept { counter_ += count; }
  std::uint64_t position() const noexcept { return counter_; }

  /// Uniform double in the open interval (0, 1).
  double uniform_open() noexcept;

 private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Standard normal deviates by the Box-Muller transform. Every pair of
/// uniforms yields two normals, so the k-th normal of a stream always comes
/// from uniforms 2*(k/2) and 2*(k/2)+1.
class NormalSampler {
 public:
  explicit NormalSampler(CounterStream stream) noexcept : stream_(stream) {}

  double operator()() noexcept;

  const CounterStream& stream() const noexcept { return stream_; }

 private:
  CounterStream stream_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace vise::rng
