#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "wordlab/errors.hpp"
#include "wordlab/metrics.hpp"
#include "wordlab/rng.hpp"

using namespace wordlab;

namespace {

WordSet random_set(Rng& rng, uint32_t m, uint32_t size) {
  std::vector<uint32_t> pool(m);
  for (uint32_t i = 0; i < m; ++i) pool[i] = i;
  rng.shuffle(pool);
  WordSet out(pool.begin(), pool.begin() + size);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("per-sample scores on basic cases") {
  SampleScore exact = sample_fscore({1, 4, 9}, {1, 4, 9});
  CHECK(exact.precision == 1.0);
  CHECK(exact.recall == 1.0);
  CHECK(exact.f == 1.0);

  // |T|=5, |P|=5, overlap 3
  SampleScore partial = sample_fscore({0, 1, 2, 3, 4}, {2, 3, 4, 7, 8});
  CHECK(partial.precision == doctest::Approx(0.6));
  CHECK(partial.recall == doctest::Approx(0.6));
  CHECK(partial.f == doctest::Approx(0.6));

  SampleScore empty_pred = sample_fscore({1, 2}, {});
  CHECK(empty_pred.precision == 0.0);
  CHECK(empty_pred.recall == 0.0);
  CHECK(empty_pred.f == 0.0);

  SampleScore both_empty = sample_fscore({}, {});
  CHECK(both_empty.recall == 1.0);
  CHECK(both_empty.f == 1.0);

  SampleScore empty_truth = sample_fscore({}, {3});
  CHECK(empty_truth.recall == 0.0);
  CHECK(empty_truth.f == 0.0);
}

TEST_CASE("argument swap exchanges precision and recall, F unchanged") {
  Rng rng(5);
  for (int rep = 0; rep < 300; ++rep) {
    WordSet t = random_set(rng, 12, static_cast<uint32_t>(rng.uniform_below(6)));
    WordSet p = random_set(rng, 12, static_cast<uint32_t>(rng.uniform_below(6)));
    SampleScore a = sample_fscore(t, p);
    SampleScore b = sample_fscore(p, t);
    if (!t.empty() && !p.empty()) {
      CHECK(a.precision == doctest::Approx(b.recall));
      CHECK(a.recall == doctest::Approx(b.precision));
    }
    CHECK(a.f == doctest::Approx(b.f));
  }
}

TEST_CASE("F equals the intersection identity") {
  Rng rng(6);
  for (int rep = 0; rep < 300; ++rep) {
    WordSet t = random_set(rng, 10, 1 + static_cast<uint32_t>(rng.uniform_below(5)));
    WordSet p = random_set(rng, 10, static_cast<uint32_t>(rng.uniform_below(5)));
    WordSet inter;
    std::set_intersection(t.begin(), t.end(), p.begin(), p.end(),
                          std::back_inserter(inter));
    const double expected =
        2.0 * inter.size() / static_cast<double>(t.size() + p.size());
    CHECK(sample_fscore(t, p).f == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("adding a correct word never lowers F; a wrong one never raises precision") {
  Rng rng(8);
  for (int rep = 0; rep < 300; ++rep) {
    WordSet t = random_set(rng, 10, 1 + static_cast<uint32_t>(rng.uniform_below(5)));
    WordSet p = random_set(rng, 10, static_cast<uint32_t>(rng.uniform_below(4)));
    SampleScore before = sample_fscore(t, p);

    WordSet missing;
    std::set_difference(t.begin(), t.end(), p.begin(), p.end(),
                        std::back_inserter(missing));
    if (!missing.empty()) {
      WordSet p2 = p;
      p2.push_back(missing[0]);
      std::sort(p2.begin(), p2.end());
      CHECK(sample_fscore(t, p2).f >= before.f - 1e-12);
    }
    WordSet wrong;
    for (uint32_t cand = 10; cand < 11; ++cand) wrong.push_back(cand);
    WordSet p3 = p;
    p3.push_back(wrong[0]);
    std::sort(p3.begin(), p3.end());
    CHECK(sample_fscore(t, p3).precision <= before.precision + 1e-12);
  }
}

TEST_CASE("evaluation report on the hand-computed fixture") {
  // 3 samples, 4 words; values worked out by hand
  std::vector<WordSet> truths = {{0, 1}, {2}, {1, 3}};
  std::vector<WordSet> preds = {{0, 2}, {2}, {}};
  EvalReport report = evaluate(truths, preds, {3, 2, 1, 1});

  CHECK(report.sample_f == doctest::Approx(50.0).epsilon(1e-12));
  CHECK(report.sample_precision == doctest::Approx(50.0).epsilon(1e-12));
  CHECK(report.sample_recall == doctest::Approx(50.0).epsilon(1e-12));
  // word0: tp=1 fp=0 fn=0 -> 100; word1: fn=2 -> 0;
  // word2: tp=1 fp=1 -> 66.67; word3: fn=1 -> 0
  CHECK(report.per_word_f[0] == doctest::Approx(100.0));
  CHECK(report.per_word_f[1] == doctest::Approx(0.0));
  CHECK(report.per_word_f[2] == doctest::Approx(100.0 * 2.0 / 3.0));
  CHECK(report.per_word_f[3] == doctest::Approx(0.0));
  CHECK(report.macro_f == doctest::Approx(100.0 * 5.0 / 12.0).epsilon(1e-12));
  CHECK(report.word_frequencies == std::vector<uint32_t>{3, 2, 1, 1});
}

TEST_CASE("macro average skips words absent from the test truths") {
  std::vector<WordSet> truths = {{0}, {1}};
  std::vector<WordSet> preds = {{0, 1}, {1, 2}};  // word 2 predicted, never true
  EvalReport report = evaluate(truths, preds, {1, 1, 5});
  CHECK(report.per_word_f[2] == 0.0);
  CHECK(report.macro_f ==
        doctest::Approx((100.0 + 100.0 * 2.0 / 3.0) / 2.0).epsilon(1e-12));
}

TEST_CASE("perfect and all-empty predictions") {
  std::vector<WordSet> truths = {{0, 1, 2, 3, 4}, {1, 2, 3, 4, 5}};
  EvalReport perfect = evaluate(truths, truths, std::vector<uint32_t>(6, 1));
  CHECK(perfect.sample_f == 100.0);
  CHECK(perfect.macro_f == 100.0);

  std::vector<WordSet> empties = {{}, {}};
  EvalReport nothing = evaluate(truths, empties, std::vector<uint32_t>(6, 1));
  CHECK(nothing.sample_f == 0.0);
}

TEST_CASE("row count mismatch is rejected") {
  std::vector<WordSet> truths = {{0}};
  std::vector<WordSet> preds = {{0}, {1}};
  CHECK_THROWS_AS(evaluate(truths, preds, {1, 1}), shape_error);
}
