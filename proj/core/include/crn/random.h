#ifndef CRN_RANDOM_H_
#define CRN_RANDOM_H_

// Hash and generator primitives shared by every seeded component. Both are
// specified bit-exactly in docs/seeding.md so that ports in other languages
// reproduce the same streams.

#include <charconv>
#include <cstdint>
#include <limits>
#include <string_view>

namespace crn {

inline constexpr std::uint64_t kFnvOffsetBasis = 0xcbf29ce484222325ULL;
inline constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

// Streaming 64-bit FNV-1a.
class Fnv1a64 {
 public:
  constexpr Fnv1a64() = default;

  constexpr void Update(char byte) {
    state_ ^= static_cast<std::uint8_t>(byte);
    state_ *= kFnvPrime;
  }
  constexpr void Update(std::string_view bytes) {
    for (char c : bytes) Update(c);
  }
  // Feeds the decimal rendering of `value` (no leading zeros, '-' for
  // negatives), i.e. exactly the bytes std::to_string would produce.
  void UpdateDecimal(std::int64_t value) {
    char buf[24];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    Update(std::string_view(buf, static_cast<std::size_t>(end - buf)));
  }
  void UpdateDecimal(std::uint64_t value) {
    char buf[24];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    Update(std::string_view(buf, static_cast<std::size_t>(end - buf)));
  }

  constexpr std::uint64_t digest() const { return state_; }

 private:
  std::uint64_t state_ = kFnvOffsetBasis;
};

constexpr std::uint64_t Fnv1a64Hash(std::string_view bytes) {
  Fnv1a64 h;
  h.Update(bytes);
  return h.digest();
}

inline constexpr std::uint64_t kSplitMixIncrement = 0x9e3779b97f4a7c15ULL;

// The splitmix64 output function applied to an already-advanced state.
constexpr std::uint64_t SplitMixFinalize(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Vigna's splitmix64. Satisfies UniformRandomBitGenerator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  constexpr explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  constexpr result_type operator()() {
    state_ += kSplitMixIncrement;
    return SplitMixFinalize(state_);
  }
  // Uniform double in [0, 1) built from the top 53 bits of one draw.
  constexpr double NextUnit() {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

 private:
  std::uint64_t state_;
};

// The first splitmix64 output for `seed`: the single draw consumed per
// seeded sample.
constexpr std::uint64_t FirstDraw(std::uint64_t seed) {
  return SplitMixFinalize(seed + kSplitMixIncrement);
}

constexpr double ToUnit(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace crn

#endif  // CRN_RANDOM_H_
