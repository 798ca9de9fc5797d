#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aggan/classifier.hpp"
#include "aggan/error.hpp"

using namespace aggan;

namespace {

Dataset blobs(Index n_per_class, std::uint64_t seed) {
  // Two well-separated Gaussian blobs.
  Rng rng(seed);
  Dataset data;
  data.features.resize(2 * n_per_class, 2);
  for (Index i = 0; i < n_per_class; ++i) {
    data.features(i, 0) = -2.0 + 0.3 * rng.normal();
    data.features(i, 1) = 0.3 * rng.normal();
    data.labels.push_back(0);
  }
  for (Index i = n_per_class; i < 2 * n_per_class; ++i) {
    data.features(i, 0) = 2.0 + 0.3 * rng.normal();
    data.features(i, 1) = 0.3 * rng.normal();
    data.labels.push_back(1);
  }
  data.classes = {0, 1};
  return data;
}

}  // namespace

TEST_CASE("classifier separates two blobs") {
  const Dataset train = blobs(100, 1);
  const Dataset test = blobs(50, 2);
  ClassifierConfig cfg;
  cfg.epochs = 50;
  cfg.seed = 3;
  const TrainedClassifier cls = train_classifier(train, cfg);
  const Metrics m = evaluate_classifier(cls, test);
  CHECK(m.accuracy > 0.95);
}

TEST_CASE("classifier training is deterministic") {
  const Dataset train = blobs(40, 4);
  ClassifierConfig cfg;
  cfg.epochs = 10;
  cfg.seed = 5;
  const TrainedClassifier a = train_classifier(train, cfg);
  const TrainedClassifier b = train_classifier(train, cfg);
  for (std::size_t l = 0; l < a.params.layers.size(); ++l)
    CHECK(a.params.layers[l].W == b.params.layers[l].W);
}

TEST_CASE("one-class training is rejected") {
  Dataset one = blobs(20, 6);
  for (auto& l : one.labels) l = 0;
  one.classes = {0};
  CHECK_THROWS_AS(train_classifier(one, ClassifierConfig{}), ArgumentError);
}

TEST_CASE("evaluating an unseen class is rejected") {
  const Dataset train = blobs(40, 7);
  ClassifierConfig cfg;
  cfg.epochs = 5;
  const TrainedClassifier cls = train_classifier(train, cfg);
  Dataset test = blobs(10, 8);
  test.labels[0] = 2;
  test.classes = {0, 1, 2};
  CHECK_THROWS_AS(evaluate_classifier(cls, test), ArgumentError);
}

TEST_CASE("predict returns catalog labels") {
  Dataset train = blobs(40, 9);
  for (auto& l : train.labels) l = l == 0 ? 3 : 9;  // sparse label ids
  train.classes = {3, 9};
  ClassifierConfig cfg;
  cfg.epochs = 30;
  const TrainedClassifier cls = train_classifier(train, cfg);
  const std::vector<int> pred = predict(cls, train.features);
  for (int p : pred) CHECK((p == 3 || p == 9));
}
