#include "aggan/data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>

#include "aggan/csv.hpp"
#include "aggan/error.hpp"

namespace aggan {

Index Dataset::class_count(int label) const {
  return static_cast<Index>(std::count(labels.begin(), labels.end(), label));
}

std::vector<Index> Dataset::indices_of(int label) const {
  std::vector<Index> out;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) out.push_back(static_cast<Index>(i));
  return out;
}

Matrix Dataset::rows_of(int label) const {
  const std::vector<Index> idx = indices_of(label);
  Matrix out(static_cast<Index>(idx.size()), dim());
  for (std::size_t i = 0; i < idx.size(); ++i)
    out.row(static_cast<Index>(i)) = features.row(idx[i]);
  return out;
}

void Dataset::validate() const {
  if (rows() < 1) throw ArgumentError("dataset: needs at least one row");
  if (static_cast<Index>(labels.size()) != rows())
    throw ArgumentError("dataset: label count does not match feature rows");
  const std::set<int> cat(classes.begin(), classes.end());
  for (int l : labels)
    if (!cat.count(l))
      throw ArgumentError("dataset: label " + std::to_string(l) +
                          " missing from the class catalog");
}

std::vector<int> Dataset::catalog(const std::vector<int>& labels) {
  std::set<int> s(labels.begin(), labels.end());
  return {s.begin(), s.end()};
}

void MixtureSpec::validate() const {
  if (components() < 1) throw ArgumentError("mixture: needs >= 1 component");
  if (sigma <= 0.0) throw ArgumentError("mixture: sigma must be positive");
  if (weights.size() != components())
    throw ArgumentError("mixture: weight count mismatch");
  if (std::abs(weights.sum() - 1.0) > 1e-9)
    throw ArgumentError("mixture: weights must sum to 1");
}

double MixtureSpec::density(const Eigen::RowVectorXd& x) const {
  const double d = static_cast<double>(means.cols());
  const double norm = std::pow(2.0 * M_PI * sigma * sigma, -d / 2.0);
  double p = 0.0;
  for (int c = 0; c < components(); ++c) {
    const double sq = (x - means.row(c)).squaredNorm();
    p += weights[c] * norm * std::exp(-sq / (2.0 * sigma * sigma));
  }
  return p;
}

namespace {

Matrix ring_means(int k, double radius) {
  Matrix means(k, 2);
  for (int j = 0; j < k; ++j) {
    const double angle = 2.0 * M_PI * j / k;
    means(j, 0) = radius * std::cos(angle);
    means(j, 1) = radius * std::sin(angle);
  }
  return means;
}

std::pair<Dataset, MixtureSpec> sample_mixture(Matrix means, double sigma,
                                               Index n_total, Rng& rng,
                                               const std::string& provenance) {
  const int k = static_cast<int>(means.rows());
  const Index d = means.cols();
  MixtureSpec spec;
  spec.means = std::move(means);
  spec.sigma = sigma;
  spec.weights = Vector::Constant(k, 1.0 / k);
  spec.validate();

  Dataset data;
  data.features.resize(n_total, d);
  data.labels.resize(n_total);
  for (Index i = 0; i < n_total; ++i) {
    const int mode = static_cast<int>(rng.uniform_int(k));
    for (Index j = 0; j < d; ++j)
      data.features(i, j) = spec.means(mode, j) + sigma * rng.normal();
    data.labels[i] = mode;
  }
  data.classes.resize(k);
  std::iota(data.classes.begin(), data.classes.end(), 0);
  data.provenance = provenance;
  return {std::move(data), std::move(spec)};
}

}  // namespace

std::pair<Dataset, MixtureSpec> gaussian_ring(int k, double radius,
                                              double sigma, Index n_per_mode,
                                              std::uint64_t seed) {
  if (k < 1) throw ArgumentError("gaussian_ring: k must be >= 1");
  if (sigma <= 0.0) throw ArgumentError("gaussian_ring: sigma must be positive");
  Rng rng(derive_seed(seed, "data.ring"));
  return sample_mixture(ring_means(k, radius), sigma, n_per_mode * k, rng,
                        "ring(k=" + std::to_string(k) + ")");
}

std::pair<Dataset, MixtureSpec> gaussian_grid(int side, double spacing,
                                              double sigma, Index n_per_mode,
                                              std::uint64_t seed) {
  if (side < 1) throw ArgumentError("gaussian_grid: side must be >= 1");
  if (sigma <= 0.0) throw ArgumentError("gaussian_grid: sigma must be positive");
  const int k = side * side;
  Matrix means(k, 2);
  const double offset = spacing * (side - 1) / 2.0;
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j) {
      means(i * side + j, 0) = spacing * j - offset;
      means(i * side + j, 1) = spacing * i - offset;
    }
  Rng rng(derive_seed(seed, "data.grid"));
  return sample_mixture(std::move(means), sigma, n_per_mode * k, rng,
                        "grid(side=" + std::to_string(side) + ")");
}

std::pair<Dataset, MixtureSpec> two_rings(int k, double radius, double sigma,
                                          Index n_per_class,
                                          std::uint64_t seed) {
  if (k < 1) throw ArgumentError("two_rings: k must be >= 1");
  Rng rng(derive_seed(seed, "data.two_rings"));

  const Matrix minority_means = ring_means(k, radius);
  Matrix majority_means(k, 2);
  for (int j = 0; j < k; ++j) {
    const double angle = 2.0 * M_PI * (j + 0.5) / k;
    majority_means(j, 0) = radius * std::cos(angle);
    majority_means(j, 1) = radius * std::sin(angle);
  }

  Dataset data;
  data.features.resize(2 * n_per_class, 2);
  data.labels.resize(2 * n_per_class);
  for (Index i = 0; i < 2 * n_per_class; ++i) {
    const bool minority = i >= n_per_class;
    const Matrix& means = minority ? minority_means : majority_means;
    const int mode = static_cast<int>(rng.uniform_int(k));
    data.features(i, 0) = means(mode, 0) + sigma * rng.normal();
    data.features(i, 1) = means(mode, 1) + sigma * rng.normal();
    data.labels[i] = minority ? 1 : 0;
  }
  data.classes = {0, 1};
  data.provenance = "two_rings(k=" + std::to_string(k) + ")";

  MixtureSpec spec;
  spec.means = minority_means;
  spec.sigma = sigma;
  spec.weights = Vector::Constant(k, 1.0 / k);
  return {std::move(data), std::move(spec)};
}

namespace {

std::vector<Index> shuffled_indices(const std::vector<Index>& src, Rng& rng) {
  std::vector<Index> idx = src;
  for (std::size_t i = idx.size(); i > 1; --i)
    std::swap(idx[i - 1], idx[rng.uniform_int(static_cast<std::int64_t>(i))]);
  return idx;
}

Dataset gather(const Dataset& data, const std::vector<Index>& idx,
               const std::string& provenance) {
  Dataset out;
  out.features.resize(static_cast<Index>(idx.size()), data.dim());
  out.labels.resize(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    out.features.row(static_cast<Index>(i)) = data.features.row(idx[i]);
    out.labels[i] = data.labels[idx[i]];
  }
  out.classes = Dataset::catalog(out.labels);
  out.provenance = provenance;
  return out;
}

}  // namespace

ImbalancedSplit make_imbalanced(const Dataset& data, int positive,
                                int negative, double ir, std::uint64_t seed,
                                double test_frac) {
  data.validate();
  if (ir < 1.0) throw ArgumentError("make_imbalanced: ir must be >= 1");
  if (positive == negative)
    throw ArgumentError("make_imbalanced: classes must differ");

  Rng rng(derive_seed(seed, "data.imbalance"));
  const std::vector<Index> pos_all = data.indices_of(positive);
  const std::vector<Index> neg_all = data.indices_of(negative);
  if (pos_all.empty() || neg_all.empty())
    throw ArgumentError("make_imbalanced: both classes must be present");

  // Test candidates: the leading test_frac of each shuffled class. The test
  // block is fixed before any subsampling, so it is identical across IRs.
  const std::vector<Index> pos = shuffled_indices(pos_all, rng);
  const std::vector<Index> neg = shuffled_indices(neg_all, rng);
  const Index pos_hold = static_cast<Index>(
      std::llround(test_frac * static_cast<double>(pos.size())));
  const Index neg_hold = static_cast<Index>(
      std::llround(test_frac * static_cast<double>(neg.size())));
  const Index n_test = std::max<Index>(1, std::min(pos_hold, neg_hold));
  const Index pos_block = std::max(n_test, pos_hold);
  const Index neg_block = std::max(n_test, neg_hold);
  if (pos_block >= static_cast<Index>(pos.size()) ||
      neg_block >= static_cast<Index>(neg.size()))
    throw ArgumentError("make_imbalanced: not enough samples to hold out a test split");

  std::vector<Index> test_idx(pos.begin(), pos.begin() + n_test);
  test_idx.insert(test_idx.end(), neg.begin(), neg.begin() + n_test);

  // Train pools start after each class's held-out block.
  const std::vector<Index> pos_pool(pos.begin() + pos_block, pos.end());
  const std::vector<Index> neg_pool(neg.begin() + neg_block, neg.end());

  const Index majority = static_cast<Index>(neg_pool.size());
  const Index minority =
      std::max<Index>(1, static_cast<Index>(std::llround(majority / ir)));
  if (minority > static_cast<Index>(pos_pool.size())) {
    const double feasible =
        static_cast<double>(majority) / static_cast<double>(pos_pool.size());
    throw ArgumentError(
        "make_imbalanced: requested ir " + fmt_g(ir) +
        " needs more positives than available; feasible ir >= " +
        fmt_g(feasible));
  }

  std::vector<Index> train_idx(neg_pool);
  train_idx.insert(train_idx.end(), pos_pool.begin(),
                   pos_pool.begin() + minority);

  ImbalancedSplit split;
  split.train = gather(data, train_idx,
                       data.provenance + " train ir=" + fmt_g(ir));
  split.test = gather(data, test_idx, data.provenance + " test");
  return split;
}

Dataset binarize_rest(const Dataset& data, int positive) {
  data.validate();
  if (data.class_count(positive) == 0)
    throw ArgumentError("binarize_rest: class " + std::to_string(positive) +
                        " not present");
  Dataset out = data;
  for (auto& l : out.labels) l = (l == positive) ? 1 : 0;
  out.classes = {0, 1};
  out.provenance = data.provenance + " binarized(" + std::to_string(positive) + ")";
  return out;
}

Dataset load_dataset_csv(const std::string& path) {
  const CsvTable table = read_csv(path);
  if (table.header.empty() || table.header.back() != "label")
    throw IoError("'" + path + "': last column must be 'label'");
  const Index d = static_cast<Index>(table.header.size()) - 1;
  for (Index j = 0; j < d; ++j)
    if (table.header[j] != "f" + std::to_string(j))
      throw IoError("'" + path + "': column " + std::to_string(j) +
                    " must be named f" + std::to_string(j));
  if (table.rows.empty()) throw IoError("'" + path + "': no data rows");

  Dataset data;
  data.features.resize(static_cast<Index>(table.rows.size()), d);
  data.labels.resize(table.rows.size());
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    for (Index j = 0; j < d; ++j)
      data.features(static_cast<Index>(i), j) = std::stod(table.rows[i][j]);
    data.labels[i] = std::stoi(table.rows[i][d]);
  }
  data.classes = Dataset::catalog(data.labels);
  data.provenance = path;
  data.validate();
  return data;
}

void save_dataset_csv(const std::string& path, const Dataset& data) {
  data.validate();
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  for (Index j = 0; j < data.dim(); ++j) out << "f" << j << ',';
  out << "label\n";
  for (Index i = 0; i < data.rows(); ++i) {
    for (Index j = 0; j < data.dim(); ++j)
      out << fmt_full(data.features(i, j)) << ',';
    out << data.labels[i] << '\n';
  }
}

}  // namespace aggan
