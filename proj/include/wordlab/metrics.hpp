#pragma once

#include <cstdint>
#include <vector>

#include "wordlab/tutor.hpp"

namespace wordlab {

struct SampleScore {
  double precision = 0.0;
  double recall = 0.0;
  double f = 0.0;
};

// Set precision/recall/F for one sample. Conventions for empty sets:
// precision is 0 when the prediction is empty; recall is 1 when both sets
// are empty and 0 when only the truth is empty; F is 1 when both sets are
// empty and otherwise 0 whenever precision + recall is 0.
SampleScore sample_fscore(const WordSet& truth, const WordSet& pred);

struct EvalReport {
  // Sample-averaged scores on the 0-100 scale.
  double sample_f = 0.0;
  double sample_precision = 0.0;
  double sample_recall = 0.0;
  // Unweighted mean of per-word F over words present in the test truths,
  // 0-100. Words never appearing in a truth row are excluded.
  double macro_f = 0.0;
  // Per-word binary F over the test set, 0-100, length = word count.
  std::vector<double> per_word_f;
  // Training-set occurrence counts, carried through for frequency analysis.
  std::vector<uint32_t> word_frequencies;
};

EvalReport evaluate(const std::vector<WordSet>& truths,
                    const std::vector<WordSet>& preds,
                    std::vector<uint32_t> train_label_counts);

}  // namespace wordlab
