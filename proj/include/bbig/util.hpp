#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace bbig {

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline uint64_t fnv1a64(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Documented sub-seed scheme: every random stream in an experiment is derived
// from the master seed, a stream name and an index, so runs are reproducible
// and independent streams never alias.
inline uint64_t sub_seed(uint64_t master, std::string_view stream, uint64_t index) {
  return splitmix64(splitmix64(master ^ fnv1a64(stream)) ^ index);
}

// Deterministic RNG wrapper. Bounded draws avoid std::uniform_int_distribution
// so the byte stream is fixed by the seed alone.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  uint64_t next_u64() { return eng_(); }

  // uniform in [0, n), n >= 1, by rejection
  uint64_t below(uint64_t n) {
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t v;
    do {
      v = eng_();
    } while (v >= limit);
    return v % n;
  }

  int bit() {
    if (bits_left_ == 0) {
      bit_buf_ = eng_();
      bits_left_ = 64;
    }
    int b = static_cast<int>(bit_buf_ & 1);
    bit_buf_ >>= 1;
    --bits_left_;
    return b;
  }

  double real01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 eng_;
  uint64_t bit_buf_ = 0;
  int bits_left_ = 0;
};

}  // namespace bbig
