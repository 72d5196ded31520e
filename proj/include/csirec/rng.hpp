#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace csirec {

/// Deterministic random stream used for splits and AUC sampling.
///
/// Backed by std::mt19937_64, whose output sequence is fixed by the
/// standard, with bounded draws done by rejection so results are
/// identical on every platform (std::uniform_int_distribution is not
/// portable across standard libraries).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound) {
    // Classic rejection off the top of the 64-bit range.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  /// Fisher-Yates shuffle of the first `prefix` positions (enough to
  /// draw a uniform sample without replacement of that size).
  template <typename T>
  void partial_shuffle(std::vector<T>& v, std::size_t prefix) {
    const std::size_t n = v.size();
    if (prefix > n) prefix = n;
    for (std::size_t i = 0; i < prefix && i + 1 < n; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(below(n - i));
      std::swap(v[i], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace csirec
