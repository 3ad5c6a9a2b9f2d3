#pragma once

#include <cstdint>
#include <vector>

namespace semdist {

// splitmix64 (Steele, Lea & Flood). All seeded sampling in the library goes
// through this generator so that results are reproducible across platforms
// and independent of thread count.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n), n > 0.
  std::uint64_t next_below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
  }
};

// Decorrelated stream seed for substream `stream` of a root seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  SplitMix64 s(seed + 0x9E3779B97F4A7C15ull * (stream + 1));
  return s.next();
}

// First k entries of a seeded Fisher-Yates shuffle of {0..n-1}.
inline std::vector<std::int32_t> sample_without_replacement(std::int32_t n,
                                                            std::int32_t k,
                                                            SplitMix64& rng) {
  std::vector<std::int32_t> idx(n);
  for (std::int32_t i = 0; i < n; ++i) idx[i] = i;
  if (k > n) k = n;
  for (std::int32_t i = 0; i < k; ++i) {
    std::int32_t j = i + static_cast<std::int32_t>(rng.next_below(n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  return idx;
}

// In-place seeded Fisher-Yates shuffle.
template <typename T>
void shuffle(std::vector<T>& v, SplitMix64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = rng.next_below(i);
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace semdist
