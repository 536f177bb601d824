#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>

#include "wordlab/errors.hpp"
#include "wordlab/tutor.hpp"

using namespace wordlab;

namespace {

// Independent reference for describe: evaluate the distance formula
// directly for every word, sort by (distance, id), take the first k.
WordSet brute_force_describe(const Lexicon& lex, std::span<const double> o,
                             uint32_t k) {
  std::vector<std::pair<double, uint32_t>> all;
  for (const WordEntry& w : lex.words) {
    double sum = 0.0;
    for (size_t j = 0; j < o.size(); ++j) {
      sum += w.weight[j] * (o[j] - w.prototype[j]) * (o[j] - w.prototype[j]);
    }
    all.emplace_back(std::sqrt(sum), w.word_id);
  }
  std::sort(all.begin(), all.end());
  WordSet out;
  for (uint32_t i = 0; i < k; ++i) out.push_back(all[i].second);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> random_object(Rng& rng, uint32_t n) {
  std::vector<double> o(n);
  for (double& v : o) v = rng.uniform01();
  return o;
}

}  // namespace

TEST_CASE("lexicon generation honours parameter contracts") {
  CHECK_THROWS_AS(generate_lexicon(0, 3, 0.5, 1), parameter_error);
  CHECK_THROWS_AS(generate_lexicon(3, 0, 0.5, 1), parameter_error);
  CHECK_THROWS_AS(generate_lexicon(3, 3, 0.0, 1), parameter_error);
  CHECK_THROWS_AS(generate_lexicon(3, 3, 1.5, 1), parameter_error);
}

TEST_CASE("weight density near the Bernoulli parameter") {
  Lexicon lex = generate_lexicon(100, 17, 0.5, 20240501);
  size_t ones = 0;
  for (const WordEntry& w : lex.words) {
    for (uint8_t b : w.weight) ones += b;
  }
  const double density = static_cast<double>(ones) / (100.0 * 17.0);
  CHECK(density == doctest::Approx(0.5).epsilon(0.1));  // 0.5 +- 0.05
}

TEST_CASE("all-zero weight vectors are repaired to a single one") {
  // p so small that every component draw lands at 0
  Lexicon lex = generate_lexicon(1, 3, 1e-300, 7);
  size_t ones = 0;
  for (uint8_t b : lex.words[0].weight) ones += b;
  CHECK(ones == 1);
}

TEST_CASE("sensitivity one makes all-ones weights") {
  Lexicon lex = generate_lexicon(5, 4, 1.0, 99);
  for (const WordEntry& w : lex.words) {
    for (uint8_t b : w.weight) CHECK(b == 1);
  }
}

TEST_CASE("lexicon generation is reproducible and in range") {
  Lexicon a = generate_lexicon(20, 6, 0.4, 12345);
  Lexicon b = generate_lexicon(20, 6, 0.4, 12345);
  CHECK(a == b);
  Lexicon c = generate_lexicon(20, 6, 0.4, 12346);
  CHECK(a != c);
  for (const WordEntry& w : a.words) {
    size_t ones = 0;
    for (size_t j = 0; j < 6; ++j) {
      CHECK(w.prototype[j] >= 0.0);
      CHECK(w.prototype[j] < 1.0);
      ones += w.weight[j];
    }
    CHECK(ones >= 1);
  }
}

TEST_CASE("weighted distance formula") {
  WordEntry w;
  w.prototype = {0.2, 0.9};
  w.weight = {1, 0};
  const std::vector<double> o = {0.6, 0.1};
  CHECK(weighted_distance(w, o) == doctest::Approx(0.4).epsilon(1e-12));

  WordEntry identity;
  identity.prototype = {0.3, 0.7, 0.5};
  identity.weight = {1, 1, 1};
  CHECK(weighted_distance(identity, identity.prototype) == 0.0);

  WordEntry corner;
  corner.prototype = {0.0, 0.0, 0.0};
  corner.weight = {1, 1, 1};
  const std::vector<double> far = {1.0, 1.0, 1.0};
  CHECK(weighted_distance(corner, far) ==
        doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));

  const std::vector<double> wrong_size = {0.1};
  CHECK_THROWS_AS(weighted_distance(w, wrong_size), shape_error);
}

TEST_CASE("masked coordinates never affect the distance") {
  Rng rng(42);
  for (int rep = 0; rep < 200; ++rep) {
    const uint32_t n = 8;
    Lexicon lex = generate_lexicon(1, n, 0.5, 1000 + rep);
    const WordEntry& w = lex.words[0];
    std::vector<double> o = random_object(rng, n);
    const double base = weighted_distance(w, o);
    for (size_t j = 0; j < n; ++j) {
      if (!w.weight[j]) o[j] = rng.uniform01();
    }
    CHECK(weighted_distance(w, o) == base);
  }
}

TEST_CASE("describe matches the brute-force oracle") {
  Rng rng(7);
  for (int rep = 0; rep < 1000; ++rep) {
    Lexicon lex = generate_lexicon(50, 8, 0.5, 5000 + rep);
    std::vector<double> o = random_object(rng, 8);
    const uint32_t k = 1 + static_cast<uint32_t>(rng.uniform_below(10));
    WordSet got = describe(lex, o, k);
    CHECK(got == brute_force_describe(lex, o, k));
    CHECK(got.size() == k);
  }
}

TEST_CASE("describe with k equal to the word count returns everything") {
  Lexicon lex = generate_lexicon(12, 4, 0.5, 3);
  std::vector<double> o(4, 0.5);
  WordSet all = describe(lex, o, 12);
  REQUIRE(all.size() == 12);
  for (uint32_t i = 0; i < 12; ++i) CHECK(all[i] == i);
}

TEST_CASE("identical entries tie toward the lower word id") {
  Lexicon lex = generate_lexicon(2, 3, 0.5, 11);
  lex.words[1].prototype = lex.words[0].prototype;
  lex.words[1].weight = lex.words[0].weight;
  std::vector<double> o(3, 0.25);
  WordSet got = describe(lex, o, 1);
  REQUIRE(got.size() == 1);
  CHECK(got[0] == 0);
}

TEST_CASE("membership boundary: every chosen word beats every rejected one") {
  Rng rng(99);
  for (int rep = 0; rep < 50; ++rep) {
    Lexicon lex = generate_lexicon(30, 5, 0.5, 800 + rep);
    std::vector<double> o = random_object(rng, 5);
    WordSet chosen = describe(lex, o, 7);
    for (uint32_t a : chosen) {
      for (uint32_t b = 0; b < 30; ++b) {
        if (std::binary_search(chosen.begin(), chosen.end(), b)) continue;
        const double da = weighted_distance(lex.words[a], o);
        const double db = weighted_distance(lex.words[b], o);
        CHECK((da < db || (da == db && a < b)));
      }
    }
  }
}

TEST_CASE("describe rejects k outside [1, m]") {
  Lexicon lex = generate_lexicon(5, 3, 0.5, 2);
  std::vector<double> o(3, 0.5);
  CHECK_THROWS_AS(describe(lex, o, 6), parameter_error);
  CHECK_THROWS_AS(describe(lex, o, 0), parameter_error);
}

TEST_CASE("chance level combinatorics") {
  CHECK(chance_level(100, 5).combinations == 75287520ull);
  CHECK(chance_level(100, 5).probability ==
        doctest::Approx(1.0 / 75287520.0).epsilon(1e-15));
  CHECK(chance_level(7, 7).combinations == 1);
  CHECK(chance_level(10, 3).combinations == 120);
  CHECK_THROWS_AS(chance_level(10, 11), parameter_error);
  CHECK_THROWS_AS(chance_level(10, 0), parameter_error);
  // C(70,35) ~ 1.1e20 exceeds the 64-bit range
  CHECK_THROWS_AS(chance_level(70, 35), std::overflow_error);
}

TEST_CASE("binomial symmetry") {
  for (uint64_t m = 2; m <= 40; ++m) {
    for (uint64_t k = 1; k < m; ++k) {
      CHECK(chance_level(m, k).combinations ==
            chance_level(m, m - k).combinations);
    }
  }
}

TEST_CASE("lexicon serialization round-trips exactly") {
  Lexicon lex = generate_lexicon(15, 9, 0.3, 0xDEADBEEF);
  const std::string path =
      (std::filesystem::temp_directory_path() / "wordlab_lexicon_rt.txt")
          .string();
  save_lexicon(lex, path);
  Lexicon back = load_lexicon(path);
  CHECK(back == lex);
  std::remove(path.c_str());
}
