#include "wordlab/rng.hpp"

#include <cmath>
#include <numbers>

namespace wordlab {

namespace {

uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

uint64_t derive_seed(uint64_t base, std::string_view tag, uint64_t index) {
  uint64_t h = 0xCBF29CE484222325ull ^ base;
  for (unsigned char c : tag) {
    h = (h ^ c) * 0x100000001B3ull;
  }
  return splitmix64(h + 0x9E3779B97F4A7C15ull * index);
}

uint64_t Rng::uniform_below(uint64_t bound) {
  return static_cast<uint64_t>(
      (static_cast<unsigned __int128>(engine_()) * bound) >> 64);
}

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  do {
    u1 = uniform01();
  } while (u1 <= 0.0);
  double u2 = uniform01();
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

}  // namespace wordlab
