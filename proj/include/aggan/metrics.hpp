#pragma once

#include <limits>
#include <vector>

#include "aggan/data.hpp"
#include "aggan/types.hpp"

namespace aggan {

/// Classification scores on a test split. Rows of the confusion matrix are
/// true classes, columns predictions, both in catalog order.
struct Metrics {
  std::vector<int> classes;
  Eigen::MatrixXi confusion;
  double accuracy = 0.0;
  std::vector<double> precision;
  std::vector<double> recall;
  std::vector<double> f1;

  // Generative scores; NaN when no generator was involved.
  double covered_modes = std::numeric_limits<double>::quiet_NaN();
  double hq_ratio = std::numeric_limits<double>::quiet_NaN();
  double sym_kl = std::numeric_limits<double>::quiet_NaN();

  int class_index(int label) const;
};

/// Builds Metrics from parallel truth/prediction label vectors.
Metrics score_predictions(const std::vector<int>& truth,
                          const std::vector<int>& predicted,
                          const std::vector<int>& classes);

struct CoverageResult {
  int covered = 0;
  double hq_ratio = 0.0;
  double sym_kl = 0.0;
};

/// Mode coverage against a known mixture: a sample is high quality iff it
/// lies within 3 sigma of its nearest component mean; a mode counts as
/// covered once it attracts at least `min_per_mode` high-quality samples.
/// The symmetrized KL runs over a fixed 64x64 histogram of the spec's
/// bounding box padded by 3 sigma, with add-one smoothing.
CoverageResult mode_coverage(const Matrix& samples, const MixtureSpec& spec,
                             long min_per_mode);

}  // namespace aggan
