#ifndef BOBURL_RNG_HPP
#define BOBURL_RNG_HPP

#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace boburl {

// Advances `state` and returns the next splitmix64 output. Used to derive
// independent stream seeds from a single master seed.
std::uint64_t splitmix64(std::uint64_t& state);

// Deterministic random stream. Every draw is defined on top of the
// standard-specified mt19937_64 engine with fixed mappings (no
// std::*_distribution, whose sequences vary between standard libraries),
// so equal seeds give equal sequences under any toolchain.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; the paired draw is cached.
  double next_gaussian();

  // Uniform in [0, n); rejection-sampled, so exactly uniform. n >= 1.
  std::size_t uniform_index(std::size_t n);

  // In-place Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = uniform_index(i);
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }

  // Indices of a uniformly random k-subset of {0..n-1}, ascending.
  std::vector<std::size_t> sample_without_replacement(std::size_t n,
                                                      std::size_t k);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace boburl

#endif  // BOBURL_RNG_HPP
