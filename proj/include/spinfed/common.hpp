#ifndef SPINFED_COMMON_HPP
#define SPINFED_COMMON_HPP

#include <boost/rational.hpp>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace spinfed {

// Time is integral (abstract time units); bounds are exact rationals.
using Time = long long;
using Rat = boost::rational<long long>;

// Raised when an input violates an operation's precondition.
struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Raised when a task/trace/file is structurally unusable.
struct StructuralError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Time ceil_div(Time num, Time den) {
  if (den <= 0) throw ParameterError("ceil_div: non-positive denominator");
  return num / den + (num % den > 0 ? 1 : 0);
}

inline Time rat_ceil(const Rat& r) {
  // boost::rational normalizes the denominator to be positive
  return ceil_div(r.numerator(), r.denominator());
}

// Deterministic RNG. mt19937_64 output is specified by the standard, and the
// sampling helpers below avoid std::uniform_int_distribution, whose mapping
// is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // uniform integer in [lo, hi], inclusive
  Time uniform(Time lo, Time hi) {
    if (lo > hi) throw ParameterError("Rng::uniform: empty range");
    std::uint64_t width = static_cast<std::uint64_t>(hi - lo) + 1;
    if (width == 0) return lo + static_cast<Time>(gen_());  // full 64-bit span
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % width;
    std::uint64_t v;
    do {
      v = gen_();
    } while (v >= limit);
    return lo + static_cast<Time>(v % width);
  }

  std::size_t pick(std::size_t n) {
    return static_cast<std::size_t>(uniform(0, static_cast<Time>(n) - 1));
  }

  bool bernoulli(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    // 53-bit threshold comparison; deterministic for a given double p
    constexpr double kScale = 9007199254740992.0;  // 2^53
    auto threshold = static_cast<std::uint64_t>(p * kScale);
    return (gen_() >> 11) < threshold;
  }

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

// splitmix64 step; used to derive independent child seeds
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::string rat_str(const Rat& r);

}  // namespace spinfed

#endif
