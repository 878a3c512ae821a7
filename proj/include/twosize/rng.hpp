#pragma once

#include <cmath>
#include <cstdint>

namespace twosize {

// splitmix64 step (Vigna / Steele et al.); used both as a standalone mixer
// and to expand seeds into xoshiro state.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Precomputed Bernoulli(p) in 64-bit fixed point: one draw = one compare.
struct BernoulliDraw {
  std::uint64_t threshold = 0;
  bool always = false;

  explicit BernoulliDraw(double p = 0.0) {
    if (p >= 1.0) {
      always = true;
    } else if (p > 0.0) {
      threshold = static_cast<std::uint64_t>(p * 0x1p64);
    }
  }
};

// xoshiro256++ stream (Blackman & Vigna, public domain reference code).
//
// Stream-splitting contract: the stream for work item k under root seed s is
// seeded from the splitmix64 sequence started at s XOR (k+1)*0x9E3779B97F4A7C15.
// Distinct k give statistically independent streams, and results merged in
// index order are reproducible for any worker count.
class RngStream {
 public:
  RngStream() : RngStream(0, 0) {}

  RngStream(std::uint64_t root_seed, std::uint64_t stream_index) {
    std::uint64_t sm = root_seed ^ (0x9E3779B97F4A7C15ULL * (stream_index + 1));
    for (auto& word : s_) word = splitmix64_next(sm);
    // all-zero state is invalid for xoshiro; sm==0 chains avoid it already,
    // but keep the guard explicit
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[3] = 0x1ULL;
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // uniform on [0,1), 53-bit resolution
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1p-53; }

  // uniform on (0,1]; safe as a log() argument
  double uniform_pos() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1p-53;
  }

  bool bernoulli(const BernoulliDraw& d) {
    return d.always || next_u64() < d.threshold;
  }

  bool bernoulli(double p) { return bernoulli(BernoulliDraw(p)); }

  // standard normal via Box-Muller; pair cached so cost is one log/sqrt per
  // two variates and the draw sequence is fully pinned by this stream
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
    const double t = 6.283185307179586476925286766559 * uniform();
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t s_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace twosize
