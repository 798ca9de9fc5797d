#pragma once

#include <string>
#include <utility>
#include <vector>

#include "aggan/rng.hpp"
#include "aggan/types.hpp"

namespace aggan {

enum class Hidden { Relu, LeakyRelu, Tanh };
enum class Output { Sigmoid, Identity, Softmax };

std::string hidden_name(Hidden act, double leaky_slope);
std::string output_name(Output act);

/// Sigmoid (and softmax) outputs are clamped into [kProbEps, 1 - kProbEps]
/// so that log(d) and log(1 - d) stay finite in every loss.
inline constexpr double kProbEps = 1e-7;

/// Architecture of a small dense net: layer widths plus one activation per
/// hidden layer and one output activation.
struct MLPSpec {
  std::vector<Index> widths;   // input, hidden..., output
  std::vector<Hidden> hidden;  // size widths.size() - 2
  double leaky_slope = 0.2;
  Output output = Output::Identity;

  Index input_dim() const { return widths.front(); }
  Index output_dim() const { return widths.back(); }
  Index layer_count() const { return static_cast<Index>(widths.size()) - 1; }

  /// All hidden layers share one activation.
  static MLPSpec dense(std::vector<Index> widths, Hidden act, Output out,
                       double leaky_slope = 0.2);

  void validate() const;
  bool operator==(const MLPSpec&) const = default;
};

/// All weights of one network. Plain values: copying a ParamSet yields a
/// fully independent offspring.
struct ParamSet {
  struct Layer {
    Matrix W;  // out x in
    Vector b;  // out
  };
  std::vector<Layer> layers;

  Index total_parameters() const;
  /// "W0", "b0", "W1", ... as used in error messages and checkpoints.
  static std::string array_name(Index layer, bool weight);
};

/// Gradients are shape-congruent to their ParamSet.
using GradSet = ParamSet;

/// Cached activations from one forward pass, sufficient for backward.
struct Tape {
  Matrix input;
  std::vector<Matrix> pre;   // affine outputs per layer
  std::vector<Matrix> post;  // activated outputs per layer
};

/// Glorot-uniform weights, zero biases.
ParamSet init_params(const MLPSpec& spec, Rng& rng);

void check_shapes(const MLPSpec& spec, const ParamSet& params);

/// Batched forward pass; rows of `input` are samples.
Matrix forward(const MLPSpec& spec, const ParamSet& params,
               const Matrix& input);
Matrix forward(const MLPSpec& spec, const ParamSet& params,
               const Matrix& input, Tape& tape);

/// Reverse-mode gradients of the scalar whose per-output partials are
/// `output_grad`. Returns parameter gradients and the gradient at the input.
std::pair<GradSet, Matrix> backward(const MLPSpec& spec,
                                    const ParamSet& params, const Tape& tape,
                                    const Matrix& output_grad);

}  // namespace aggan
