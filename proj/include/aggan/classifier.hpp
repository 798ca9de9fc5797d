#pragma once

#include <cstdint>
#include <vector>

#include "aggan/data.hpp"
#include "aggan/metrics.hpp"
#include "aggan/net.hpp"
#include "aggan/optim.hpp"

namespace aggan {

struct ClassifierConfig {
  std::vector<Index> hidden = {32, 32};
  Hidden activation = Hidden::Relu;
  int epochs = 200;
  Index batch_size = 64;
  OptConfig opt{OptKind::Adam, 1e-3};
  std::uint64_t seed = 0;
};

/// A softmax MLP over the train set's class catalog.
struct TrainedClassifier {
  MLPSpec spec;
  ParamSet params;
  std::vector<int> classes;
};

TrainedClassifier train_classifier(const Dataset& train,
                                   const ClassifierConfig& cfg);

std::vector<int> predict(const TrainedClassifier& cls, const Matrix& features);

/// Scores the classifier on a test split. Throws ArgumentError if the test
/// set carries a class the classifier was never trained on.
Metrics evaluate_classifier(const TrainedClassifier& cls, const Dataset& test);

}  // namespace aggan
