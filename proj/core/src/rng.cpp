#include "vise/rng.hpp"

#include <cmath>
#include <numbers>

namespace vise::rng {

CounterStream::CounterStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
    : key_(mix64(mix64(seed) ^ (stream_id * 0xd1342543de82ef95ULL + 0x632be59bd9b4e019ULL))) {}

double CounterStream::uniform_open() noexcept {
  // 53 random mantissa bits, shifted by half an ulp off zero.
  return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
}

double NormalSampler::operator()() noexcept {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = stream_.uniform_open();
  const double u2 = stream_.uniform_open();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

}  // namespace vise::rng
