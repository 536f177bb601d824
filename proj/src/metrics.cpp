#include "wordlab/metrics.hpp"

#include <algorithm>

#include "wordlab/errors.hpp"

namespace wordlab {

namespace {

size_t intersection_size(const WordSet& a, const WordSet& b) {
  size_t i = 0, j = 0, count = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) ++i;
    else if (b[j] < a[i]) ++j;
    else { ++count; ++i; ++j; }
  }
  return count;
}

}  // namespace

SampleScore sample_fscore(const WordSet& truth, const WordSet& pred) {
  SampleScore s;
  const size_t hits = intersection_size(truth, pred);
  s.precision = pred.empty() ? 0.0 : static_cast<double>(hits) / pred.size();
  if (truth.empty()) {
    s.recall = pred.empty() ? 1.0 : 0.0;
  } else {
    s.recall = static_cast<double>(hits) / truth.size();
  }
  if (truth.empty() && pred.empty()) {
    s.f = 1.0;
  } else if (s.precision + s.recall > 0.0) {
    s.f = 2.0 * s.precision * s.recall / (s.precision + s.recall);
  }
  return s;
}

EvalReport evaluate(const std::vector<WordSet>& truths,
                    const std::vector<WordSet>& preds,
                    std::vector<uint32_t> train_label_counts) {
  if (truths.size() != preds.size()) {
    throw shape_error("evaluate: " + std::to_string(truths.size()) +
                      " truth rows vs " + std::to_string(preds.size()) +
                      " prediction rows");
  }
  const size_t m = train_label_counts.size();
  const size_t rows = truths.size();

  EvalReport report;
  report.word_frequencies = std::move(train_label_counts);
  report.per_word_f.assign(m, 0.0);

  double sum_p = 0.0, sum_r = 0.0, sum_f = 0.0;
  std::vector<uint32_t> tp(m, 0), fp(m, 0), fn(m, 0);
  for (size_t i = 0; i < rows; ++i) {
    SampleScore s = sample_fscore(truths[i], preds[i]);
    sum_p += s.precision;
    sum_r += s.recall;
    sum_f += s.f;
    size_t a = 0, b = 0;
    const WordSet& t = truths[i];
    const WordSet& p = preds[i];
    while (a < t.size() || b < p.size()) {
      if (b == p.size() || (a < t.size() && t[a] < p[b])) fn[t[a++]]++;
      else if (a == t.size() || p[b] < t[a]) fp[p[b++]]++;
      else { tp[t[a]]++; ++a; ++b; }
    }
  }

  if (rows > 0) {
    report.sample_precision = 100.0 * sum_p / rows;
    report.sample_recall = 100.0 * sum_r / rows;
    report.sample_f = 100.0 * sum_f / rows;
  }

  double macro_sum = 0.0;
  size_t present = 0;
  for (size_t j = 0; j < m; ++j) {
    const double denom = 2.0 * tp[j] + fp[j] + fn[j];
    report.per_word_f[j] = denom > 0.0 ? 100.0 * 2.0 * tp[j] / denom : 0.0;
    if (tp[j] + fn[j] > 0) {  // word appears in the test truths
      macro_sum += report.per_word_f[j];
      ++present;
    }
  }
  report.macro_f = present > 0 ? macro_sum / present : 0.0;
  return report;
}

}  // namespace wordlab
