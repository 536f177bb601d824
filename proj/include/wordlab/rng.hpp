#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace wordlab {

// Generator identifier recorded in output metadata. Draws are defined in
// terms of raw 64-bit words from mt19937_64; uniform doubles take the top
// 53 bits so results do not depend on library distribution internals.
inline constexpr const char* kRngAlgorithm = "mt19937_64/u53";

// Substream seed for (base, tag, index): FNV-1a over the tag bytes folded
// into the base, then a splitmix64 finalizer over the index. Every
// stochastic component gets its own stream through this function so that
// parallel cells never share state.
uint64_t derive_seed(uint64_t base, std::string_view tag, uint64_t index = 0);

class Rng {
public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next_u64() { return engine_(); }

  // Uniform on [0,1), 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound) by 128-bit multiply-shift.
  uint64_t uniform_below(uint64_t bound);

  bool bernoulli(double p) { return uniform01() < p; }

  // Standard normal via Box-Muller; the paired draw is cached.
  double gaussian();

  // Fisher-Yates using uniform_below.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(uniform_below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace wordlab
