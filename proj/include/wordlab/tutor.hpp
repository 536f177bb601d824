#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wordlab/rng.hpp"

namespace wordlab {

// Sorted, duplicate-free set of word ids.
using WordSet = std::vector<uint32_t>;

struct WordEntry {
  uint32_t word_id = 0;
  std::vector<double> prototype;  // components in [0,1]
  std::vector<uint8_t> weight;    // 0/1 sensitivity mask, never all-zero

  bool operator==(const WordEntry&) const = default;
};

// The tutor's word inventory. Immutable after generation; safe to share
// across concurrent evaluators.
struct Lexicon {
  std::vector<WordEntry> words;
  uint32_t n = 0;
  double sensitivity_p = 0.0;
  uint64_t rng_seed = 0;

  uint32_t word_count() const { return static_cast<uint32_t>(words.size()); }

  bool operator==(const Lexicon&) const = default;
};

// Draws m words: prototypes i.i.d. uniform on [0,1]^n, weight bits i.i.d.
// Bernoulli(sensitivity_p). An all-zero weight vector gets one uniformly
// chosen bit forced to 1, consuming one extra draw from the same stream.
// Draw order per word: n prototype components, n weight bits, repair draw.
Lexicon generate_lexicon(uint32_t m, uint32_t n, double sensitivity_p,
                         uint64_t seed);

// sqrt of the weight-masked squared-difference sum between object and
// prototype. Masked coordinates are skipped; the value equals the literal
// formula with zero weights multiplied in.
double weighted_distance(const WordEntry& entry, std::span<const double> object);

// The k words with smallest weighted distance to the object; distance ties
// broken by lower word_id. Deterministic.
WordSet describe(const Lexicon& lexicon, std::span<const double> object,
                 uint32_t k);

struct ChanceLevel {
  uint64_t combinations = 0;
  double probability = 0.0;
};

// C(m,k) in exact integer arithmetic and its reciprocal. Throws
// std::overflow_error if the count exceeds the 64-bit range.
ChanceLevel chance_level(uint64_t m, uint64_t k);

// Structured text serialization; see README for the format.
void save_lexicon(const Lexicon& lexicon, const std::string& path);
Lexicon load_lexicon(const std::string& path);

}  // namespace wordlab
