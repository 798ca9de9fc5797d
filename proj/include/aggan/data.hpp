#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "aggan/rng.hpp"
#include "aggan/types.hpp"

namespace aggan {

/// Labeled feature rows. Values are immutable after construction; pipeline
/// steps build new datasets.
struct Dataset {
  Matrix features;  // n x d
  std::vector<int> labels;
  std::vector<int> classes;  // catalog, ascending
  std::string provenance;

  Index rows() const { return features.rows(); }
  Index dim() const { return features.cols(); }
  Index class_count(int label) const;
  std::vector<Index> indices_of(int label) const;
  Matrix rows_of(int label) const;

  void validate() const;
  static std::vector<int> catalog(const std::vector<int>& labels);
};

/// Isotropic Gaussian mixture; ground truth for coverage scoring.
struct MixtureSpec {
  Matrix means;  // k x d
  double sigma = 1.0;
  Vector weights;  // sums to 1

  int components() const { return static_cast<int>(means.rows()); }
  void validate() const;
  /// Mixture density at a point.
  double density(const Eigen::RowVectorXd& x) const;
};

/// k isotropic Gaussians on a circle of the given radius; every sample draws
/// its mode uniformly. Labels carry the drawn mode index.
std::pair<Dataset, MixtureSpec> gaussian_ring(int k, double radius,
                                              double sigma, Index n_per_mode,
                                              std::uint64_t seed);

/// side x side grid of Gaussians centered on the origin.
std::pair<Dataset, MixtureSpec> gaussian_grid(int side, double spacing,
                                              double sigma, Index n_per_mode,
                                              std::uint64_t seed);

/// Two interleaved rings: class 1 (the minority in imbalance runs) sits at
/// mode angles 2*pi*j/k, class 0 at the half-step offsets. The returned
/// MixtureSpec describes class 1.
std::pair<Dataset, MixtureSpec> two_rings(int k, double radius, double sigma,
                                          Index n_per_class,
                                          std::uint64_t seed);

struct ImbalancedSplit {
  Dataset train;
  Dataset test;  // balanced, held out before subsampling
};

/// Builds the two-class imbalanced task: a balanced test split is held out
/// first, the negative-class train pool is kept whole as the majority, and
/// the positive class is subsampled to round(majority / ir), at least 1.
ImbalancedSplit make_imbalanced(const Dataset& data, int positive,
                                int negative, double ir,
                                std::uint64_t seed, double test_frac = 0.2);

/// Relabels `positive` to 1 and every other class to 0.
Dataset binarize_rest(const Dataset& data, int positive);

/// CSV with header f0,...,f{d-1},label.
Dataset load_dataset_csv(const std::string& path);
void save_dataset_csv(const std::string& path, const Dataset& data);

}  // namespace aggan
