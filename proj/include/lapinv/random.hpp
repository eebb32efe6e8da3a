#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace lapinv {

/// Seeded generator with platform-independent output.
///
/// std::mt19937_64 has a fully specified output sequence; the standard
/// distributions do not, so bounded integers and unit reals are derived here
/// (Lemire's multiply-shift rejection and the top 53 bits respectively).
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(engine_()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

private:
  std::mt19937_64 engine_;
};

/// `count` distinct items in draw order (partial Fisher-Yates on a copy).
template <typename T>
std::vector<T> sample_without_replacement(Rng &rng, std::span<const T> items,
                                          std::size_t count) {
  std::vector<T> pool(items.begin(), items.end());
  if (count > pool.size())
    count = pool.size();
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  return pool;
}

template <typename T>
std::vector<T> sample_without_replacement(Rng &rng, const std::vector<T> &items,
                                          std::size_t count) {
  return sample_without_replacement(rng, std::span<const T>(items), count);
}

} // namespace lapinv
