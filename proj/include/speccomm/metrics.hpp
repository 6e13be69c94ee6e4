#pragma once

#include <vector>

#include "types.hpp"

namespace speccomm {

struct ErrorReport {
  double error_rate = 0.0;
  // matched_true[e-1] = true label assigned to estimated label e, 0 if none.
  std::vector<int> best_permutation;
  Eigen::MatrixXi confusion;  // (true label) x (estimated label) counts
};

// Minimum misclassification fraction over injective matchings of estimated
// labels to true labels: brute force when both alphabets have <= 8 labels,
// optimal assignment otherwise. Unmatched estimated labels count all their
// nodes as errors.
ErrorReport relative_error_rate(const Labels& estimated, const Labels& truth);

// Maximum-total assignment on a (rows x cols) non-negative score matrix;
// returns col index per row (-1 = unassigned). Exposed for oracle tests.
std::vector<int> max_assignment(const Eigen::MatrixXi& scores);

}  // namespace speccomm
