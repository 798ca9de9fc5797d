#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aggan/error.hpp"
#include "aggan/net.hpp"
#include "aggan/optim.hpp"
#include "oracle.hpp"

using namespace aggan;
using namespace aggan::testing;

namespace {

// 1 -> 1 affine net: y = act(w * x + b)
MLPSpec scalar_spec(Output out) {
  MLPSpec spec;
  spec.widths = {1, 1};
  spec.output = out;
  return spec;
}

ParamSet scalar_params(double w, double b) {
  ParamSet p;
  p.layers.push_back({Matrix::Constant(1, 1, w), Vector::Constant(1, b)});
  return p;
}

}  // namespace

TEST_CASE("forward: zero parameters give the zero map") {
  const MLPSpec spec = MLPSpec::dense({3, 4, 2}, Hidden::Relu, Output::Identity);
  ParamSet params;
  params.layers.push_back({Matrix::Zero(4, 3), Vector::Zero(4)});
  params.layers.push_back({Matrix::Zero(2, 4), Vector::Zero(2)});
  const Matrix x = Matrix::Random(5, 3);
  CHECK(forward(spec, params, x).isZero(0.0));
}

TEST_CASE("forward: scalar affine map") {
  const Matrix x = Matrix::Constant(1, 1, 3.0);
  CHECK(forward(scalar_spec(Output::Identity), scalar_params(2.0, 1.0), x)(0, 0)
        == doctest::Approx(7.0).epsilon(1e-12));
}

TEST_CASE("forward: sigmoid of zero is one half") {
  const Matrix x = Matrix::Constant(1, 1, 123.0);
  CHECK(forward(scalar_spec(Output::Sigmoid), scalar_params(0.0, 0.0), x)(0, 0)
        == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("forward: sigmoid outputs are clamped away from 0 and 1") {
  const Matrix x = Matrix::Constant(1, 1, 1.0);
  const double hi =
      forward(scalar_spec(Output::Sigmoid), scalar_params(1000.0, 0.0), x)(0, 0);
  const double lo =
      forward(scalar_spec(Output::Sigmoid), scalar_params(-1000.0, 0.0), x)(0, 0);
  CHECK(hi == 1.0 - kProbEps);
  CHECK(lo == kProbEps);
  CHECK(std::isfinite(std::log(hi)));
  CHECK(std::isfinite(std::log(1.0 - hi)));
  CHECK(std::isfinite(std::log(lo)));
}

TEST_CASE("forward is pure: identical inputs give bit-identical outputs") {
  Rng rng(11);
  const MLPSpec spec = MLPSpec::dense({2, 8, 3}, Hidden::Tanh, Output::Softmax);
  const ParamSet params = init_params(spec, rng);
  const Matrix x = rng.normal_matrix(6, 2);
  const Matrix a = forward(spec, params, x);
  const Matrix b = forward(spec, params, x);
  CHECK(a == b);
}

TEST_CASE("forward: shape mismatch names the offending layer") {
  const MLPSpec spec = MLPSpec::dense({3, 4, 2}, Hidden::Relu, Output::Identity);
  Rng rng(0);
  const ParamSet params = init_params(spec, rng);
  CHECK_THROWS_WITH_AS(forward(spec, params, Matrix::Zero(2, 5)),
                       doctest::Contains("layer 0"), DimensionError);

  ParamSet bad = params;
  bad.layers[1].W = Matrix::Zero(2, 5);
  CHECK_THROWS_WITH_AS(forward(spec, bad, Matrix::Zero(2, 3)),
                       doctest::Contains("layer 1"), DimensionError);
}

TEST_CASE("backward: product rule on y = w * x") {
  const MLPSpec spec = scalar_spec(Output::Identity);
  const ParamSet params = scalar_params(4.0, 0.0);
  Tape tape;
  forward(spec, params, Matrix::Constant(1, 1, 3.0), tape);
  const auto [grads, input_grad] =
      backward(spec, params, tape, Matrix::Constant(1, 1, 1.0));
  CHECK(grads.layers[0].W(0, 0) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(input_grad(0, 0) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("backward: zero upstream gradient zeroes everything") {
  Rng rng(3);
  const MLPSpec spec = MLPSpec::dense({2, 8, 8, 1}, Hidden::Relu, Output::Sigmoid);
  const ParamSet params = init_params(spec, rng);
  Tape tape;
  forward(spec, params, rng.normal_matrix(4, 2), tape);
  const auto [grads, input_grad] =
      backward(spec, params, tape, Matrix::Zero(4, 1));
  CHECK(grad_norm(grads) == 0.0);
  CHECK(input_grad.isZero(0.0));
}

TEST_CASE("backward: stale tape is rejected") {
  Rng rng(5);
  const MLPSpec spec = MLPSpec::dense({2, 4, 1}, Hidden::Relu, Output::Sigmoid);
  const MLPSpec other = MLPSpec::dense({2, 5, 1}, Hidden::Relu, Output::Sigmoid);
  const ParamSet params = init_params(spec, rng);
  const ParamSet params_other = init_params(other, rng);
  Tape tape;
  forward(other, params_other, rng.normal_matrix(3, 2), tape);
  CHECK_THROWS_AS(backward(spec, params, tape, Matrix::Zero(3, 1)), TapeError);
}

TEST_CASE("backward matches finite differences on a 2-8-8-1 net") {
  Rng rng(2024);
  const MLPSpec spec =
      MLPSpec::dense({2, 8, 8, 1}, Hidden::Tanh, Output::Sigmoid);
  double worst = 0.0;
  for (int draw = 0; draw < 100; ++draw) {
    const ParamSet params = init_params(spec, rng);
    const Matrix x = rng.normal_matrix(4, 2);
    const Matrix weight = rng.normal_matrix(4, 1);  // random scalarization

    Tape tape;
    forward(spec, params, x, tape);
    const auto [analytic, input_grad] = backward(spec, params, tape, weight);
    const GradSet fd = fd_param_gradients(
        spec, params, x,
        [&](const Matrix& out) { return (out.array() * weight.array()).sum(); });
    worst = std::max(worst, max_grad_error(analytic, fd));
  }
  CHECK(worst < 1e-4);
}

TEST_CASE("gradients match finite differences for every activation pairing") {
  Rng rng(77);
  for (int draw = 0; draw < 30; ++draw) {
    const MLPSpec spec = random_spec(rng);
    const auto [params, x] = smooth_draw(spec, rng, 1 + rng.uniform_int(6));
    const Matrix weight = rng.normal_matrix(x.rows(), spec.output_dim());

    Tape tape;
    forward(spec, params, x, tape);
    const auto [analytic, input_grad] = backward(spec, params, tape, weight);
    const GradSet fd = fd_param_gradients(
        spec, params, x,
        [&](const Matrix& out) { return (out.array() * weight.array()).sum(); });
    CHECK(max_grad_error(analytic, fd) < 1e-4);
  }
}

TEST_CASE("offspring independence: copies never alias the parent") {
  Rng rng(9);
  const MLPSpec spec = MLPSpec::dense({2, 8, 2}, Hidden::Relu, Output::Identity);
  const ParamSet parent = init_params(spec, rng);
  const double before = checksum(parent);
  ParamSet child = parent;
  child.layers[0].W.setConstant(42.0);
  child.layers[1].b.setConstant(-1.0);
  CHECK(checksum(parent) == before);
}
