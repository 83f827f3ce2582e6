#ifndef BBALG_RNG_HPP
#define BBALG_RNG_HPP

#include <cstdint>
#include <limits>

namespace bbalg {

/**
 * Counter-based splittable generator (SplitMix64 output function over a keyed
 * counter). `split(i)` derives an independent stream from the key alone, so
 * streams for trials, rounds or oracles never depend on how much randomness
 * a sibling stream consumed.
 *
 * Satisfies UniformRandomBitGenerator.
 */
class SplitRng {
public:
  using result_type = std::uint64_t;

  explicit SplitRng(std::uint64_t seed = 0) : key_(mix(seed + golden)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return mix(key_ + golden * ++counter_); }

  SplitRng split(std::uint64_t stream) const
  {
    SplitRng child;
    child.key_ = mix(key_ ^ mix(stream * 0xd1b54a32d192ed03ULL + golden));
    return child;
  }

  /// One uniform bit; bits are drawn 64 at a time from the stream.
  bool bit()
  {
    if (bits_left_ == 0) {
      bit_buffer_ = (*this)();
      bits_left_ = 64;
    }
    const bool b = bit_buffer_ & 1u;
    bit_buffer_ >>= 1;
    --bits_left_;
    return b;
  }

  /// Uniform value in [0, 2^bits), bits <= 64.
  result_type bits(unsigned count)
  {
    if (count == 0)
      return 0;
    const result_type v = (*this)();
    return count >= 64 ? v : (v & ((result_type{1} << count) - 1));
  }

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

private:
  static constexpr std::uint64_t golden = 0x9e3779b97f4a7c15ULL;

  static constexpr std::uint64_t mix(std::uint64_t z)
  {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
  std::uint64_t bit_buffer_ = 0;
  unsigned bits_left_ = 0;
};

} // namespace bbalg

#endif // BBALG_RNG_HPP
