#ifndef QUBOCUT_RNG_HPP
#define QUBOCUT_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace qubocut {

// SplitMix64 finalizer, used both as a stream mixer and for seed derivation.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace detail {

inline std::uint64_t hash_part(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  std::uint64_t s = h;
  return splitmix64(s);
}

inline std::uint64_t hash_part(std::uint64_t h, std::string_view s) {
  std::uint64_t fnv = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    fnv ^= c;
    fnv *= 0x100000001b3ULL;
  }
  return hash_part(h, fnv);
}

template <typename T>
  requires std::is_integral_v<T> || std::is_enum_v<T>
inline std::uint64_t hash_part(std::uint64_t h, T v) {
  return hash_part(h, static_cast<std::uint64_t>(v));
}

}  // namespace detail

// Stable seed derivation: identical inputs give identical streams on every
// platform, regardless of evaluation order elsewhere in the program.
template <typename... Parts>
std::uint64_t derive_seed(std::uint64_t master, const Parts&... parts) {
  std::uint64_t h = master;
  ((h = detail::hash_part(h, parts)), ...);
  std::uint64_t s = h;
  return splitmix64(s);
}

// mt19937_64 engine with hand-rolled distributions. The engine sequence is
// pinned by the standard; std::uniform_* distributions are not, so we draw
// doubles and normals ourselves to keep seeded runs reproducible.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // uniform integer in [0, n)
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v = engine_();
    while (v >= limit) v = engine_();
    return v % n;
  }

  bool bernoulli(double p) { return uniform() < p; }

  // standard normal via Box-Muller; the sine partner is cached
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace qubocut

#endif  // QUBOCUT_RNG_HPP
