#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "core/rational.hpp"

namespace ddgeom {

/// Deterministic random source. std::mt19937_64 has a fully specified
/// output sequence, and all range reductions below avoid
/// std::uniform_int_distribution, whose mapping is implementation-defined;
/// the same seed therefore yields the same draws on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform integer in [lo, hi] via rejection sampling.
  long uniform_long(long lo, long hi) {
    if (lo > hi) throw std::invalid_argument("uniform_long: empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<long>(engine_());
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t draw;
    do {
      draw = engine_();
    } while (draw >= limit);
    return lo + static_cast<long>(draw % span);
  }

  /// Uniform rational k/q with k in [-range*q, range*q].
  Rational uniform_rational(long range, long q) {
    if (range < 0 || q < 1) throw std::invalid_argument("uniform_rational: bad range");
    const long k = uniform_long(-range * q, range * q);
    Rational r(k, q);
    r.canonicalize();
    return r;
  }

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const std::size_t j =
          static_cast<std::size_t>(uniform_long(0, static_cast<long>(i) - 1));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ddgeom
