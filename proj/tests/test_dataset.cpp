#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include "wordlab/dataset.hpp"
#include "wordlab/errors.hpp"
#include "wordlab/rng.hpp"

using namespace wordlab;

namespace {

std::string temp_file(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("uniform generation: shape, range, determinism") {
  ObjectMatrix data = gen_uniform(4532, 17, 101);
  CHECK(data.rows() == 4532);
  CHECK(data.dims() == 17);
  for (size_t i = 0; i < data.rows(); ++i) {
    for (size_t j = 0; j < 17; ++j) {
      CHECK(data.values(i, j) >= 0.0);
      CHECK(data.values(i, j) < 1.0);
    }
  }
  CHECK(gen_uniform(50, 3, 7).values == gen_uniform(50, 3, 7).values);
  ObjectMatrix single = gen_uniform(1, 1, 9);
  CHECK(single.values(0, 0) >= 0.0);
  CHECK(single.values(0, 0) < 1.0);
}

TEST_CASE("uniform sample mean approaches one half") {
  ObjectMatrix data = gen_uniform(100000, 1, 555);
  double sum = 0.0;
  for (size_t i = 0; i < data.rows(); ++i) sum += data.values(i, 0);
  CHECK(sum / data.rows() == doctest::Approx(0.5).epsilon(0.02));  // 0.5 +- 0.01
}

TEST_CASE("degenerate single tight cluster collapses to one point") {
  ObjectMatrix data = gen_clustered(100, 2, 1, 1e-9, 3);
  for (size_t i = 1; i < data.rows(); ++i) {
    CHECK(std::abs(data.values(i, 0) - data.values(0, 0)) < 1e-6);
    CHECK(std::abs(data.values(i, 1) - data.values(0, 1)) < 1e-6);
  }
  CHECK(data.source_tag == "CLUSTERED");
}

TEST_CASE("tight blobs are recoverable by nearest center") {
  ClusteredData data = gen_clustered_detailed(1000, 17, 20, 0.02, 77);
  size_t correct = 0;
  for (size_t i = 0; i < 1000; ++i) {
    double best = 1e300;
    uint32_t best_c = 0;
    for (uint32_t c = 0; c < 20; ++c) {
      double d = 0.0;
      for (size_t j = 0; j < 17; ++j) {
        const double diff = data.objects.values(i, j) - data.centers(c, j);
        d += diff * diff;
      }
      if (d < best) {
        best = d;
        best_c = c;
      }
    }
    correct += best_c == data.assignment[i];
  }
  CHECK(static_cast<double>(correct) / 1000.0 >= 0.99);
}

TEST_CASE("pre-clip values stay within five spreads of their center") {
  const double spread = 0.01;
  ClusteredData data = gen_clustered_detailed(10, 3, 10, spread, 41);
  for (size_t i = 0; i < 10; ++i) {
    for (size_t j = 0; j < 3; ++j) {
      const double offset =
          data.pre_clip(i, j) - data.centers(data.assignment[i], j);
      CHECK(std::abs(offset) <= 5.0 * spread);
    }
  }
}

TEST_CASE("clustered generation validates parameters") {
  CHECK_THROWS_AS(gen_clustered(10, 2, 0, 0.1, 1), parameter_error);
  CHECK_THROWS_AS(gen_clustered(10, 2, 2, 0.0, 1), parameter_error);
}

TEST_CASE("grounded loader rescales columns to [0,1]") {
  const std::string path = temp_file("wordlab_gro_fixture.csv");
  {
    std::ofstream out(path);
    out << "f0,f1,f2\n";
    out << "2.0,5.0,1.0\n";
    out << "4.0,5.0,3.0\n";
    out << "6.0,5.0,2.0\n";
  }
  ObjectMatrix data = load_grounded(path, "GRO1");
  CHECK(data.rows() == 3);
  CHECK(data.values(0, 0) == 0.0);
  CHECK(data.values(1, 0) == 0.5);
  CHECK(data.values(2, 0) == 1.0);
  // constant column maps to zero
  CHECK(data.values(0, 1) == 0.0);
  CHECK(data.values(1, 1) == 0.0);
  CHECK(data.values(2, 1) == 0.0);
  CHECK(data.values(0, 2) == 0.0);
  CHECK(data.values(1, 2) == 1.0);
  CHECK(data.values(2, 2) == 0.5);
  std::remove(path.c_str());
}

TEST_CASE("loader reports malformed cells with location") {
  const std::string path = temp_file("wordlab_gro_bad.csv");
  {
    std::ofstream out(path);
    out << "f0,f1\n0.5,0.25\n0.75,oops\n";
  }
  try {
    load_grounded(path);
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    const std::string msg = e.what();
    CHECK(msg.find(":3") != std::string::npos);
    CHECK(msg.find("column 1") != std::string::npos);
    CHECK(msg.find("oops") != std::string::npos);
  }
  std::remove(path.c_str());
}

TEST_CASE("loader rejects ragged rows") {
  const std::string path = temp_file("wordlab_gro_ragged.csv");
  {
    std::ofstream out(path);
    out << "f0,f1\n0.5,0.25\n0.75\n";
  }
  CHECK_THROWS_AS(load_grounded(path), parse_error);
  std::remove(path.c_str());
}

TEST_CASE("paired loads must agree on shape") {
  const std::string a = temp_file("wordlab_pair_a.csv");
  const std::string b = temp_file("wordlab_pair_b.csv");
  {
    std::ofstream out(a);
    out << "f0\n0.1\n0.9\n";
  }
  {
    std::ofstream out(b);
    out << "f0\n0.1\n";
  }
  CHECK_THROWS_AS(load_grounded_pair(a, b), shape_error);
  std::remove(a.c_str());
  std::remove(b.c_str());
}

TEST_CASE("scaled data round-trips through CSV exactly") {
  ObjectMatrix data = gen_uniform(25, 4, 900);
  rescale_unit_interval(data.values);
  const std::string path = temp_file("wordlab_roundtrip.csv");
  save_features_csv(data.values, path);
  Matrix back = load_features_csv_raw(path);
  CHECK(back == data.values);
  // loading through the grounded path rescales; already-scaled data is a
  // fixed point of the scaler
  ObjectMatrix again = load_grounded(path, "GRO1");
  CHECK(again.values == data.values);
  std::remove(path.c_str());
}

TEST_CASE("rescaling twice equals rescaling once") {
  Matrix values(40, 3);
  Rng rng(4);
  for (size_t i = 0; i < 40; ++i) {
    for (size_t j = 0; j < 3; ++j) values(i, j) = 10.0 * rng.uniform01() - 5.0;
  }
  Matrix once = values;
  rescale_unit_interval(once);
  Matrix twice = once;
  rescale_unit_interval(twice);
  for (size_t i = 0; i < 40; ++i) {
    for (size_t j = 0; j < 3; ++j) {
      CHECK(twice(i, j) == doctest::Approx(once(i, j)).epsilon(1e-12));
    }
  }
}

TEST_CASE("tutor labeling: k ones per row, duplicates identical, oracle") {
  Lexicon lex = generate_lexicon(30, 5, 0.5, 71);
  ObjectMatrix objects = gen_uniform(10, 5, 72);
  // duplicate row 0 into row 9
  for (size_t j = 0; j < 5; ++j) {
    objects.values(9, j) = objects.values(0, j);
  }
  LabeledDataset data = label_with_tutor(objects, lex, 4);
  CHECK(data.k == 4);
  CHECK(data.labels.label_count() == 30);
  for (size_t i = 0; i < 10; ++i) {
    CHECK(data.labels.row_ids(i).size() == 4);
    CHECK(data.labels.row_ids(i) == describe(lex, objects.values.row(i), 4));
  }
  CHECK(data.labels.row_ids(9) == data.labels.row_ids(0));
  CHECK(data.lexicon_seed == 71);

  ObjectMatrix wrong = gen_uniform(4, 6, 73);
  CHECK_THROWS_AS(label_with_tutor(wrong, lex, 2), shape_error);
}

TEST_CASE("paired labeling derives labels from the tutor view only") {
  Lexicon lex = generate_lexicon(20, 4, 0.5, 81);
  ObjectMatrix tutor_view = gen_uniform(12, 4, 82);

  SUBCASE("identical views reduce to plain labeling") {
    PairedDataset pair = label_paired(tutor_view, tutor_view, lex, 3);
    LabeledDataset plain = label_with_tutor(tutor_view, lex, 3);
    CHECK(pair.labels == plain.labels);
  }

  SUBCASE("noisy learner view keeps tutor labels") {
    ObjectMatrix learner_view = tutor_view;
    Rng rng(83);
    for (size_t i = 0; i < learner_view.rows(); ++i) {
      for (size_t j = 0; j < 4; ++j) {
        learner_view.values(i, j) = std::clamp(
            learner_view.values(i, j) + 0.001 * (rng.uniform01() - 0.5), 0.0,
            1.0);
      }
    }
    PairedDataset pair = label_paired(tutor_view, learner_view, lex, 3);
    for (size_t i = 0; i < 12; ++i) {
      CHECK(pair.labels.row_ids(i) ==
            describe(lex, tutor_view.values.row(i), 3));
    }
    CHECK(pair.learner_view.values == learner_view.values);
    CHECK(pair.tutor_view.values == tutor_view.values);
  }

  SUBCASE("disjoint views still use the tutor view") {
    ObjectMatrix learner_view = gen_uniform(12, 4, 99);
    PairedDataset pair = label_paired(tutor_view, learner_view, lex, 5);
    for (size_t i = 0; i < 12; ++i) {
      CHECK(pair.labels.row_ids(i) ==
            describe(lex, tutor_view.values.row(i), 5));
    }
  }

  SUBCASE("mismatched shapes are rejected") {
    ObjectMatrix bad = gen_uniform(11, 4, 100);
    CHECK_THROWS_AS(label_paired(tutor_view, bad, lex, 2), shape_error);
  }
}

TEST_CASE("standardization uses population statistics") {
  Matrix values(2, 2);
  values(0, 0) = 0.0;
  values(1, 0) = 1.0;
  values(0, 1) = 3.0;
  values(1, 1) = 3.0;
  StandardizeStats stats = fit_standardize(values);
  CHECK(stats.mean[0] == doctest::Approx(0.5));
  CHECK(stats.stddev[0] == doctest::Approx(0.5));  // population, not sample
  Matrix out = apply_standardize(values, stats);
  CHECK(out(0, 0) == doctest::Approx(-1.0));
  CHECK(out(1, 0) == doctest::Approx(1.0));
  // constant column becomes zeros
  CHECK(out(0, 1) == 0.0);
  CHECK(out(1, 1) == 0.0);
}

TEST_CASE("test-fold standardization keeps training statistics") {
  ObjectMatrix train = gen_uniform(50, 3, 1);
  ObjectMatrix test = gen_uniform(20, 3, 2);
  StandardizeStats stats = fit_standardize(train.values);
  Matrix out = apply_standardize(test.values, stats);
  double mean0 = 0.0;
  for (size_t i = 0; i < 20; ++i) mean0 += out(i, 0);
  mean0 /= 20;
  CHECK(std::abs(mean0) > 1e-6);  // test columns need not be centered
}

TEST_CASE("fold split sizes and partition property") {
  FoldSplit split = kfold_split(4532, 4, 12);
  REQUIRE(split.test.size() == 4);
  for (uint32_t f = 0; f < 4; ++f) {
    CHECK(split.test[f].size() == 1133);
    CHECK(split.train[f].size() == 4532 - 1133);
  }

  FoldSplit tiny = kfold_split(4, 4, 5);
  for (uint32_t f = 0; f < 4; ++f) CHECK(tiny.test[f].size() == 1);

  Rng rng(600);
  for (int rep = 0; rep < 30; ++rep) {
    const uint32_t rows = 5 + static_cast<uint32_t>(rng.uniform_below(200));
    const uint32_t folds = 2 + static_cast<uint32_t>(rng.uniform_below(5));
    if (rows < folds) continue;
    FoldSplit s = kfold_split(rows, folds, rep);
    std::set<uint32_t> seen;
    size_t sizes = 0;
    for (uint32_t f = 0; f < folds; ++f) {
      sizes += s.test[f].size();
      for (uint32_t idx : s.test[f]) {
        CHECK(seen.insert(idx).second);  // pairwise disjoint
      }
      std::set<uint32_t> fold_rows(s.train[f].begin(), s.train[f].end());
      for (uint32_t idx : s.test[f]) {
        CHECK(!fold_rows.contains(idx));
      }
      CHECK(s.train[f].size() + s.test[f].size() == rows);
    }
    CHECK(sizes == rows);  // union covers everything
  }

  CHECK(kfold_split(10, 2, 3).test == kfold_split(10, 2, 3).test);
  CHECK_THROWS_AS(kfold_split(3, 4, 0), parameter_error);
  CHECK_THROWS_AS(kfold_split(10, 1, 0), parameter_error);
}

TEST_CASE("label lists round-trip through CSV") {
  std::vector<WordSet> labels = {{0, 3, 9}, {}, {1}, {2, 4}};
  const std::string path = temp_file("wordlab_labels.csv");
  save_labels_csv(labels, path);
  CHECK(load_labels_csv(path) == labels);
  std::remove(path.c_str());
}

TEST_CASE("label matrix and word set conversions agree") {
  std::vector<WordSet> sets = {{0, 2}, {1}, {}};
  LabelMatrix matrix = wordsets_to_labels(sets, 4);
  CHECK(labels_to_wordsets(matrix) == sets);
  CHECK_THROWS_AS(wordsets_to_labels({{7}}, 4), parameter_error);
}
