#include "aggan/optim.hpp"

#include <cmath>

#include "aggan/error.hpp"

namespace aggan {

OptState OptState::make(const OptConfig& cfg, const ParamSet& shape) {
  OptState opt;
  opt.cfg = cfg;
  if (cfg.kind == OptKind::Adam) {
    for (const auto& layer : shape.layers) {
      opt.m.push_back({Matrix::Zero(layer.W.rows(), layer.W.cols()),
                       Vector::Zero(layer.b.size())});
      opt.v.push_back({Matrix::Zero(layer.W.rows(), layer.W.cols()),
                       Vector::Zero(layer.b.size())});
    }
  }
  return opt;
}

namespace {

void check_finite(const Matrix& g, const std::string& name) {
  if (!g.allFinite())
    throw NumericError("non-finite gradient in array " + name);
}

template <typename Mat>
void adam_update(Mat& p, const Mat& g, Mat& m, Mat& v, const OptConfig& c,
                 double bc1, double bc2) {
  m = c.beta1 * m + (1.0 - c.beta1) * g;
  v = (c.beta2 * v.array() + (1.0 - c.beta2) * g.array().square()).matrix();
  const auto m_hat = m.array() / bc1;
  const auto v_hat = v.array() / bc2;
  p = (p.array() - c.lr * m_hat / (v_hat.sqrt() + c.eps)).matrix();
}

}  // namespace

void opt_step(ParamSet& params, const GradSet& grads, OptState& opt) {
  if (grads.layers.size() != params.layers.size())
    throw DimensionError("gradients have " +
                         std::to_string(grads.layers.size()) +
                         " layers, parameters have " +
                         std::to_string(params.layers.size()));
  for (std::size_t l = 0; l < params.layers.size(); ++l) {
    const auto& gl = grads.layers[l];
    auto& pl = params.layers[l];
    if (gl.W.rows() != pl.W.rows() || gl.W.cols() != pl.W.cols() ||
        gl.b.size() != pl.b.size())
      throw DimensionError("gradient shape mismatch at layer " +
                           std::to_string(l));
    check_finite(gl.W, ParamSet::array_name(static_cast<Index>(l), true));
    check_finite(gl.b, ParamSet::array_name(static_cast<Index>(l), false));
  }

  switch (opt.cfg.kind) {
    case OptKind::Sgd:
      for (std::size_t l = 0; l < params.layers.size(); ++l) {
        params.layers[l].W -= opt.cfg.lr * grads.layers[l].W;
        params.layers[l].b -= opt.cfg.lr * grads.layers[l].b;
      }
      break;
    case OptKind::Adam: {
      if (opt.m.size() != params.layers.size())
        throw DimensionError("optimizer state does not match parameters");
      const long t = opt.step + 1;
      const double bc1 = 1.0 - std::pow(opt.cfg.beta1, t);
      const double bc2 = 1.0 - std::pow(opt.cfg.beta2, t);
      for (std::size_t l = 0; l < params.layers.size(); ++l) {
        adam_update(params.layers[l].W, grads.layers[l].W, opt.m[l].W,
                    opt.v[l].W, opt.cfg, bc1, bc2);
        adam_update(params.layers[l].b, grads.layers[l].b, opt.m[l].b,
                    opt.v[l].b, opt.cfg, bc1, bc2);
      }
      break;
    }
  }
  ++opt.step;
}

double grad_norm(const GradSet& grads) {
  double sq = 0.0;
  for (const auto& layer : grads.layers) {
    sq += layer.W.squaredNorm();
    sq += layer.b.squaredNorm();
  }
  return std::sqrt(sq);
}

}  // namespace aggan
