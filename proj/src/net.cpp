#include "aggan/net.hpp"

#include <cmath>
#include <sstream>

#include "aggan/error.hpp"

namespace aggan {

namespace {

std::string shape_str(Index r, Index c) {
  std::ostringstream os;
  os << r << "x" << c;
  return os.str();
}

}  // namespace

std::string hidden_name(Hidden act, double leaky_slope) {
  switch (act) {
    case Hidden::Relu:
      return "relu";
    case Hidden::Tanh:
      return "tanh";
    case Hidden::LeakyRelu: {
      std::ostringstream os;
      os << "leaky-relu(" << leaky_slope << ")";
      return os.str();
    }
  }
  return "?";
}

std::string output_name(Output act) {
  switch (act) {
    case Output::Sigmoid:
      return "sigmoid";
    case Output::Identity:
      return "identity";
    case Output::Softmax:
      return "softmax";
  }
  return "?";
}

MLPSpec MLPSpec::dense(std::vector<Index> widths, Hidden act, Output out,
                       double leaky_slope) {
  MLPSpec spec;
  spec.widths = std::move(widths);
  if (spec.widths.size() >= 2)
    spec.hidden.assign(spec.widths.size() - 2, act);
  spec.leaky_slope = leaky_slope;
  spec.output = out;
  spec.validate();
  return spec;
}

void MLPSpec::validate() const {
  if (widths.size() < 2)
    throw ArgumentError("MLPSpec: need input and output widths");
  for (Index w : widths)
    if (w < 1) throw ArgumentError("MLPSpec: layer widths must be >= 1");
  if (hidden.size() != widths.size() - 2)
    throw ArgumentError("MLPSpec: need one hidden activation per hidden layer");
}

Index ParamSet::total_parameters() const {
  Index n = 0;
  for (const Layer& l : layers) n += l.W.size() + l.b.size();
  return n;
}

std::string ParamSet::array_name(Index layer, bool weight) {
  return (weight ? "W" : "b") + std::to_string(layer);
}

ParamSet init_params(const MLPSpec& spec, Rng& rng) {
  spec.validate();
  ParamSet params;
  for (Index l = 0; l + 1 < static_cast<Index>(spec.widths.size()); ++l) {
    const Index fan_in = spec.widths[l];
    const Index fan_out = spec.widths[l + 1];
    const double bound = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    Matrix w(fan_out, fan_in);
    for (Index i = 0; i < fan_out; ++i)
      for (Index j = 0; j < fan_in; ++j)
        w(i, j) = (2.0 * rng.uniform01() - 1.0) * bound;
    params.layers.push_back({std::move(w), Vector::Zero(fan_out)});
  }
  return params;
}

void check_shapes(const MLPSpec& spec, const ParamSet& params) {
  if (params.layers.size() != spec.widths.size() - 1)
    throw DimensionError("ParamSet has " + std::to_string(params.layers.size()) +
                         " layers, spec expects " +
                         std::to_string(spec.widths.size() - 1));
  for (std::size_t l = 0; l < params.layers.size(); ++l) {
    const auto& layer = params.layers[l];
    if (layer.W.rows() != spec.widths[l + 1] || layer.W.cols() != spec.widths[l])
      throw DimensionError("layer " + std::to_string(l) + ": weight is " +
                           shape_str(layer.W.rows(), layer.W.cols()) +
                           ", spec expects " +
                           shape_str(spec.widths[l + 1], spec.widths[l]));
    if (layer.b.size() != spec.widths[l + 1])
      throw DimensionError("layer " + std::to_string(l) + ": bias has " +
                           std::to_string(layer.b.size()) +
                           " entries, spec expects " +
                           std::to_string(spec.widths[l + 1]));
  }
}

namespace {

Matrix apply_hidden(const Matrix& z, Hidden act, double slope) {
  switch (act) {
    case Hidden::Relu:
      return z.cwiseMax(0.0);
    case Hidden::LeakyRelu:
      return z.cwiseMax(z * slope);
    case Hidden::Tanh:
      return z.array().tanh().matrix();
  }
  return z;
}

Matrix apply_output(const Matrix& z, Output act) {
  switch (act) {
    case Output::Identity:
      return z;
    case Output::Sigmoid: {
      Matrix y = (1.0 / (1.0 + (-z.array()).exp())).matrix();
      return y.array().min(1.0 - kProbEps).max(kProbEps).matrix();
    }
    case Output::Softmax: {
      Matrix y(z.rows(), z.cols());
      for (Index i = 0; i < z.rows(); ++i) {
        Eigen::RowVectorXd row = z.row(i);
        row.array() -= row.maxCoeff();
        Eigen::RowVectorXd e = row.array().exp();
        y.row(i) = e / e.sum();
      }
      return y;
    }
  }
  return z;
}

Matrix run_forward(const MLPSpec& spec, const ParamSet& params,
                   const Matrix& input, Tape* tape) {
  spec.validate();
  check_shapes(spec, params);
  if (input.cols() != spec.input_dim())
    throw DimensionError("layer 0: input has " + std::to_string(input.cols()) +
                         " columns, spec expects " +
                         std::to_string(spec.input_dim()));
  if (tape) {
    tape->input = input;
    tape->pre.clear();
    tape->post.clear();
  }
  Matrix a = input;
  const Index n_layers = spec.layer_count();
  for (Index l = 0; l < n_layers; ++l) {
    Matrix z = a * params.layers[l].W.transpose();
    z.rowwise() += params.layers[l].b.transpose();
    if (l + 1 < n_layers)
      a = apply_hidden(z, spec.hidden[l], spec.leaky_slope);
    else
      a = apply_output(z, spec.output);
    if (tape) {
      tape->pre.push_back(z);
      tape->post.push_back(a);
    }
  }
  if (!a.allFinite())
    throw NumericError("forward produced non-finite output");
  return a;
}

}  // namespace

Matrix forward(const MLPSpec& spec, const ParamSet& params,
               const Matrix& input) {
  return run_forward(spec, params, input, nullptr);
}

Matrix forward(const MLPSpec& spec, const ParamSet& params,
               const Matrix& input, Tape& tape) {
  return run_forward(spec, params, input, &tape);
}

std::pair<GradSet, Matrix> backward(const MLPSpec& spec,
                                    const ParamSet& params, const Tape& tape,
                                    const Matrix& output_grad) {
  spec.validate();
  check_shapes(spec, params);
  const Index n_layers = spec.layer_count();
  if (static_cast<Index>(tape.pre.size()) != n_layers ||
      static_cast<Index>(tape.post.size()) != n_layers)
    throw TapeError("tape has " + std::to_string(tape.pre.size()) +
                    " layers, spec expects " + std::to_string(n_layers));
  for (Index l = 0; l < n_layers; ++l)
    if (tape.pre[l].cols() != spec.widths[l + 1] ||
        tape.pre[l].rows() != tape.input.rows())
      throw TapeError("tape layer " + std::to_string(l) +
                      " does not match the spec; was it produced by a "
                      "different forward call?");
  if (output_grad.rows() != tape.input.rows() ||
      output_grad.cols() != spec.output_dim())
    throw DimensionError("output_grad is " +
                         shape_str(output_grad.rows(), output_grad.cols()) +
                         ", expected " +
                         shape_str(tape.input.rows(), spec.output_dim()));

  GradSet grads;
  grads.layers.resize(params.layers.size());

  Matrix delta;  // dL/dz of the current layer
  {
    const Matrix& y = tape.post[n_layers - 1];
    switch (spec.output) {
      case Output::Identity:
        delta = output_grad;
        break;
      case Output::Sigmoid: {
        // Clamped entries are flat, so their derivative is zero.
        Matrix mask =
            ((y.array() > kProbEps) && (y.array() < 1.0 - kProbEps))
                .cast<double>();
        delta = output_grad.array() * y.array() * (1.0 - y.array()) *
                mask.array();
        break;
      }
      case Output::Softmax: {
        delta.resize(y.rows(), y.cols());
        for (Index i = 0; i < y.rows(); ++i) {
          const double dot = output_grad.row(i).dot(y.row(i));
          delta.row(i) =
              y.row(i).array() * (output_grad.row(i).array() - dot);
        }
        break;
      }
    }
  }

  for (Index l = n_layers - 1; l >= 0; --l) {
    const Matrix& a_prev = (l == 0) ? tape.input : tape.post[l - 1];
    grads.layers[l].W = delta.transpose() * a_prev;
    grads.layers[l].b = delta.colwise().sum().transpose();
    Matrix upstream = delta * params.layers[l].W;  // dL/da_{l-1}
    if (l > 0) {
      const Matrix& z_prev = tape.pre[l - 1];
      switch (spec.hidden[l - 1]) {
        case Hidden::Relu:
          delta = upstream.array() * (z_prev.array() > 0.0).cast<double>();
          break;
        case Hidden::LeakyRelu:
          delta = upstream.array() *
                  (z_prev.array() > 0.0)
                      .select(Matrix::Ones(z_prev.rows(), z_prev.cols()),
                              Matrix::Constant(z_prev.rows(), z_prev.cols(),
                                               spec.leaky_slope))
                      .array();
          break;
        case Hidden::Tanh: {
          const Matrix& a = tape.post[l - 1];
          delta = upstream.array() * (1.0 - a.array().square());
          break;
        }
      }
    } else {
      return {std::move(grads), std::move(upstream)};
    }
  }
  return {std::move(grads), Matrix()};  // unreachable
}

}  // namespace aggan
