#include "aggan/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "aggan/error.hpp"

namespace aggan {

TrainedClassifier train_classifier(const Dataset& train,
                                   const ClassifierConfig& cfg) {
  train.validate();
  if (train.classes.size() < 2)
    throw ArgumentError("train_classifier: need at least two classes");

  TrainedClassifier cls;
  cls.classes = train.classes;
  std::vector<Index> widths = {train.dim()};
  widths.insert(widths.end(), cfg.hidden.begin(), cfg.hidden.end());
  widths.push_back(static_cast<Index>(train.classes.size()));
  cls.spec = MLPSpec::dense(widths, cfg.activation, Output::Softmax);

  Rng rng(derive_seed(cfg.seed, "classifier"));
  cls.params = init_params(cls.spec, rng);
  OptState opt = OptState::make(cfg.opt, cls.params);

  // Class index per row, once.
  std::vector<int> targets(train.rows());
  for (Index i = 0; i < train.rows(); ++i) {
    const auto it = std::find(cls.classes.begin(), cls.classes.end(),
                              train.labels[i]);
    targets[i] = static_cast<int>(it - cls.classes.begin());
  }

  std::vector<Index> order(train.rows());
  std::iota(order.begin(), order.end(), 0);
  const Index n = train.rows();
  const Index batch = std::min(cfg.batch_size, n);

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    for (Index i = n; i > 1; --i)
      std::swap(order[i - 1], order[rng.uniform_int(i)]);
    for (Index start = 0; start + batch <= n; start += batch) {
      Matrix x(batch, train.dim());
      std::vector<int> y(batch);
      for (Index b = 0; b < batch; ++b) {
        x.row(b) = train.features.row(order[start + b]);
        y[b] = targets[order[start + b]];
      }
      Tape tape;
      const Matrix probs = forward(cls.spec, cls.params, x, tape);
      // Cross-entropy: L = -mean(log p[target]).
      Matrix dprobs = Matrix::Zero(batch, probs.cols());
      for (Index b = 0; b < batch; ++b)
        dprobs(b, y[b]) =
            -1.0 / (static_cast<double>(batch) *
                    std::max(probs(b, y[b]), 1e-12));
      const auto [grads, input_grad] =
          backward(cls.spec, cls.params, tape, dprobs);
      opt_step(cls.params, grads, opt);
    }
  }
  return cls;
}

std::vector<int> predict(const TrainedClassifier& cls,
                         const Matrix& features) {
  const Matrix probs = forward(cls.spec, cls.params, features);
  std::vector<int> out(features.rows());
  for (Index i = 0; i < features.rows(); ++i) {
    Index best;
    probs.row(i).maxCoeff(&best);
    out[i] = cls.classes[best];
  }
  return out;
}

Metrics evaluate_classifier(const TrainedClassifier& cls,
                            const Dataset& test) {
  test.validate();
  for (int label : test.classes)
    if (std::find(cls.classes.begin(), cls.classes.end(), label) ==
        cls.classes.end())
      throw ArgumentError("evaluate_classifier: class " +
                          std::to_string(label) + " absent from train");
  return score_predictions(test.labels, predict(cls, test.features),
                           cls.classes);
}

}  // namespace aggan
