#pragma once

#include <vector>

#include "aggan/net.hpp"

namespace aggan {

enum class OptKind { Sgd, Adam };

struct OptConfig {
  OptKind kind = OptKind::Adam;
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  bool operator==(const OptConfig&) const = default;
};

/// Optimizer state for one ParamSet. Adam moments are shape-congruent to the
/// parameters; SGD carries no state beyond the step counter.
struct OptState {
  OptConfig cfg;
  std::vector<ParamSet::Layer> m;  // first moments
  std::vector<ParamSet::Layer> v;  // second moments
  long step = 0;

  static OptState make(const OptConfig& cfg, const ParamSet& shape);
};

/// One optimizer step in place. Throws NumericError naming the offending
/// array if a gradient entry is not finite.
void opt_step(ParamSet& params, const GradSet& grads, OptState& opt);

/// Global L2 norm over every entry of every array.
double grad_norm(const GradSet& grads);

}  // namespace aggan
