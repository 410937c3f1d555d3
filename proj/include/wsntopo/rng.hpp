#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>

namespace wsntopo {

// SplitMix64 finalizer applied to (x + golden gamma).
std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Folds a base seed and a list of stream ids into one 64-bit engine seed:
//   s = splitmix64(seed); for id in ids: s = splitmix64(s ^ splitmix64(id));
std::uint64_t derive_seed(std::uint64_t seed,
                          std::initializer_list<std::uint64_t> stream) noexcept;

/// Random stream used for every draw in the library.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The conversions to reals and bounded integers are done here
/// rather than through <random> distributions (which are implementation
/// defined), so a (seed, stream) pair yields the same draws on every
/// platform and compiler:
///   uniform()  = (next() >> 11) * 2^-53
///   below(n)   = Lemire multiply-shift with rejection
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}
  Rng(std::uint64_t seed, std::initializer_list<std::uint64_t> stream)
      : engine_(derive_seed(seed, stream)) {}

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform on [lo, hi]; returns lo when lo == hi.
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer on [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  // Index drawn with probability weights[i] / sum(weights). Zero weights are
  // never returned. At least one weight must be positive.
  std::size_t weighted_index(std::span<const double> weights);

 private:
  std::mt19937_64 engine_;
};

}  // namespace wsntopo
