#include "aggan/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "aggan/error.hpp"

namespace aggan {

int Metrics::class_index(int label) const {
  const auto it = std::find(classes.begin(), classes.end(), label);
  return it == classes.end() ? -1 : static_cast<int>(it - classes.begin());
}

Metrics score_predictions(const std::vector<int>& truth,
                          const std::vector<int>& predicted,
                          const std::vector<int>& classes) {
  if (truth.size() != predicted.size() || truth.empty())
    throw ArgumentError("score_predictions: label vectors must match and be non-empty");
  Metrics m;
  m.classes = classes;
  const int k = static_cast<int>(classes.size());
  m.confusion = Eigen::MatrixXi::Zero(k, k);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const int t = m.class_index(truth[i]);
    const int p = m.class_index(predicted[i]);
    if (t < 0 || p < 0)
      throw ArgumentError("score_predictions: label outside the catalog");
    ++m.confusion(t, p);
  }
  m.accuracy = static_cast<double>(m.confusion.trace()) /
               static_cast<double>(truth.size());
  m.precision.resize(k);
  m.recall.resize(k);
  m.f1.resize(k);
  for (int c = 0; c < k; ++c) {
    const double tp = m.confusion(c, c);
    const double col = m.confusion.col(c).sum();
    const double row = m.confusion.row(c).sum();
    m.precision[c] = col > 0 ? tp / col : 0.0;
    m.recall[c] = row > 0 ? tp / row : 0.0;
    const double pr = m.precision[c] + m.recall[c];
    m.f1[c] = pr > 0 ? 2.0 * m.precision[c] * m.recall[c] / pr : 0.0;
  }
  return m;
}

CoverageResult mode_coverage(const Matrix& samples, const MixtureSpec& spec,
                             long min_per_mode) {
  if (samples.rows() == 0) throw ArgumentError("mode_coverage: no samples");
  spec.validate();
  if (samples.cols() != spec.means.cols())
    throw ArgumentError("mode_coverage: dimension mismatch");

  const int k = spec.components();
  const double hq_radius = 3.0 * spec.sigma;
  std::vector<long> hits(k, 0);
  long hq = 0;
  for (Index i = 0; i < samples.rows(); ++i) {
    int nearest = 0;
    double best = (samples.row(i) - spec.means.row(0)).squaredNorm();
    for (int c = 1; c < k; ++c) {
      const double d = (samples.row(i) - spec.means.row(c)).squaredNorm();
      if (d < best) {
        best = d;
        nearest = c;
      }
    }
    if (std::sqrt(best) <= hq_radius) {
      ++hq;
      ++hits[nearest];
    }
  }

  CoverageResult out;
  for (int c = 0; c < k; ++c)
    if (hits[c] >= min_per_mode) ++out.covered;
  out.hq_ratio = static_cast<double>(hq) / static_cast<double>(samples.rows());

  // Symmetrized KL on a fixed grid; only defined for 2-D specs.
  if (spec.means.cols() == 2) {
    constexpr int kBins = 64;
    const double pad = 3.0 * spec.sigma;
    const double x0 = spec.means.col(0).minCoeff() - pad;
    const double x1 = spec.means.col(0).maxCoeff() + pad;
    const double y0 = spec.means.col(1).minCoeff() - pad;
    const double y1 = spec.means.col(1).maxCoeff() + pad;
    const double dx = (x1 - x0) / kBins;
    const double dy = (y1 - y0) / kBins;

    // Both histograms carry add-one smoothing: the sample side as counts,
    // the mixture side as pseudo-counts of the same total mass.
    const double n = static_cast<double>(samples.rows());
    Eigen::MatrixXd counts = Eigen::MatrixXd::Ones(kBins, kBins);
    for (Index i = 0; i < samples.rows(); ++i) {
      int bx = static_cast<int>((samples(i, 0) - x0) / dx);
      int by = static_cast<int>((samples(i, 1) - y0) / dy);
      bx = std::clamp(bx, 0, kBins - 1);
      by = std::clamp(by, 0, kBins - 1);
      counts(by, bx) += 1.0;
    }
    Eigen::MatrixXd mass(kBins, kBins);
    for (int by = 0; by < kBins; ++by)
      for (int bx = 0; bx < kBins; ++bx) {
        Eigen::RowVectorXd center(2);
        center << x0 + (bx + 0.5) * dx, y0 + (by + 0.5) * dy;
        mass(by, bx) = spec.density(center);
      }
    mass *= n / mass.sum();
    const Eigen::MatrixXd q_counts = mass.array() + 1.0;
    const Eigen::MatrixXd p = counts / counts.sum();
    const Eigen::MatrixXd q = q_counts / q_counts.sum();
    double sym = 0.0;
    for (int by = 0; by < kBins; ++by)
      for (int bx = 0; bx < kBins; ++bx)
        sym += (p(by, bx) - q(by, bx)) * std::log(p(by, bx) / q(by, bx));
    out.sym_kl = sym;
  } else {
    out.sym_kl = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

}  // namespace aggan
