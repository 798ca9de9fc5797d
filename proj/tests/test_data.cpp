#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <set>

#include "aggan/data.hpp"
#include "aggan/error.hpp"

using namespace aggan;

TEST_CASE("gaussian_ring: one tight mode sits at (radius, 0)") {
  const auto [data, spec] = gaussian_ring(1, 2.0, 1e-9, 50, 1);
  CHECK(data.rows() == 50);
  for (Index i = 0; i < data.rows(); ++i) {
    CHECK(data.features(i, 0) == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(data.features(i, 1) == doctest::Approx(0.0).scale(1.0).epsilon(1e-6));
  }
}

TEST_CASE("gaussian_ring: mode draws are uniform within the multinomial bound") {
  const int k = 8;
  const Index n = 8000;
  const auto [data, spec] = gaussian_ring(k, 2.0, 0.04, n / k, 2);
  REQUIRE(data.rows() == n);
  std::vector<long> counts(k, 0);
  for (int label : data.labels) ++counts[label];
  const double expected = static_cast<double>(n) / k;
  const double sigma3 =
      3.0 * std::sqrt(n * (1.0 / k) * (1.0 - 1.0 / k));
  for (int mode = 0; mode < k; ++mode)
    CHECK(std::abs(counts[mode] - expected) <= sigma3);
}

TEST_CASE("gaussian_grid: side 5 yields 25 modes") {
  const auto [data, spec] = gaussian_grid(5, 2.0, 0.05, 10, 3);
  CHECK(spec.components() == 25);
  CHECK(data.classes.size() == 25);
  // corners span (side-1)*spacing in each axis, centered on the origin
  CHECK(spec.means.col(0).maxCoeff() == doctest::Approx(4.0));
  CHECK(spec.means.col(0).minCoeff() == doctest::Approx(-4.0));
}

TEST_CASE("two_rings: interleaved classes with the minority spec returned") {
  const auto [data, spec] = two_rings(8, 2.0, 0.04, 500, 4);
  CHECK(data.rows() == 1000);
  CHECK(data.class_count(0) == 500);
  CHECK(data.class_count(1) == 500);
  CHECK(spec.components() == 8);
  // minority mode 0 is at angle 0
  CHECK(spec.means(0, 0) == doctest::Approx(2.0));
  CHECK(spec.means(0, 1) == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("make_imbalanced: majority 5000 at ir 100 keeps 50 positives") {
  const auto [data, spec] = two_rings(8, 2.0, 0.04, 6250, 5);
  // 20% of each class held out: train pools are 5000 + 5000
  const ImbalancedSplit split = make_imbalanced(data, 1, 0, 100.0, 5);
  CHECK(split.train.class_count(0) == 5000);
  CHECK(split.train.class_count(1) == 50);
  CHECK(split.test.class_count(0) == split.test.class_count(1));
}

TEST_CASE("make_imbalanced: ir 1 balances the train set") {
  const auto [data, spec] = two_rings(4, 2.0, 0.04, 500, 6);
  const ImbalancedSplit split = make_imbalanced(data, 1, 0, 1.0, 6);
  CHECK(split.train.class_count(0) == split.train.class_count(1));
}

TEST_CASE("make_imbalanced: realized minority within one sample of the target") {
  Rng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = 200 + rng.uniform_int(800);
    const double ir = 1.0 + rng.uniform01() * 99.0;
    const auto [data, spec] = two_rings(4, 2.0, 0.04, n, trial);
    const ImbalancedSplit split = make_imbalanced(data, 1, 0, ir, trial);
    const double majority = static_cast<double>(split.train.class_count(0));
    const double minority = static_cast<double>(split.train.class_count(1));
    CHECK(std::abs(minority - std::max(1.0, majority / ir)) <= 1.0);
  }
}

TEST_CASE("make_imbalanced: the test split never depends on the ir") {
  const auto [data, spec] = two_rings(8, 2.0, 0.04, 1000, 8);
  const ImbalancedSplit a = make_imbalanced(data, 1, 0, 10.0, 99);
  const ImbalancedSplit b = make_imbalanced(data, 1, 0, 100.0, 99);
  CHECK(a.test.features == b.test.features);
  CHECK(a.test.labels == b.test.labels);
}

TEST_CASE("make_imbalanced: unattainable ir reports the feasible bound") {
  // 30 positives vs 3000 negatives: ir 1 would need 2400 positives.
  const auto [ring, spec] = gaussian_ring(2, 2.0, 0.04, 1515, 9);
  Dataset data = ring;
  // build an asymmetric two-class set from modes 0/1
  Dataset small;
  std::vector<Index> keep;
  int pos_kept = 0;
  for (Index i = 0; i < data.rows(); ++i) {
    if (data.labels[i] == 1 && pos_kept >= 30) continue;
    if (data.labels[i] == 1) ++pos_kept;
    keep.push_back(i);
  }
  small.features.resize(static_cast<Index>(keep.size()), data.dim());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    small.features.row(static_cast<Index>(i)) = data.features.row(keep[i]);
    small.labels.push_back(data.labels[keep[i]]);
  }
  small.classes = {0, 1};
  CHECK_THROWS_WITH_AS(make_imbalanced(small, 1, 0, 1.0, 9),
                       doctest::Contains("feasible ir"), ArgumentError);
}

TEST_CASE("binarize_rest merges every other class") {
  const auto [data, spec] = gaussian_ring(5, 2.0, 0.04, 40, 10);
  const Dataset bin = binarize_rest(data, 3);
  CHECK(bin.classes == std::vector<int>{0, 1});
  CHECK(bin.class_count(1) == data.class_count(3));
  CHECK(bin.class_count(0) == data.rows() - data.class_count(3));
  CHECK_THROWS_AS(binarize_rest(data, 17), ArgumentError);
}

TEST_CASE("dataset CSV round-trip") {
  const auto [data, spec] = gaussian_ring(3, 1.0, 0.1, 20, 11);
  const std::string path =
      (std::filesystem::temp_directory_path() / "aggan_dataset.csv").string();
  save_dataset_csv(path, data);
  const Dataset loaded = load_dataset_csv(path);
  CHECK(loaded.features == data.features);
  CHECK(loaded.labels == data.labels);
}

TEST_CASE("digits fixture loads with 64 features and 10 classes") {
  const Dataset digits = load_dataset_csv("data/digits8x8.csv");
  CHECK(digits.dim() == 64);
  CHECK(digits.classes.size() == 10);
  CHECK(digits.rows() > 1700);
}
