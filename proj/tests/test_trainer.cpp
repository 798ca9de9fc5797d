#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "aggan/data.hpp"
#include "aggan/error.hpp"
#include "aggan/trainer.hpp"
#include "oracle.hpp"

using namespace aggan;
using namespace aggan::testing;

namespace {

TrainerConfig toy_config(TrainMode mode, std::uint64_t seed) {
  TrainerConfig cfg;
  cfg.mode = mode;
  if (mode == TrainMode::Fixed) cfg.objectives = {MutationObjective::Minimax};
  cfg.batch_size = 16;
  cfg.latent_dim = 2;
  cfg.iterations = 50;
  cfg.seed = seed;
  cfg.g_spec = MLPSpec::dense({2, 16, 2}, Hidden::Relu, Output::Identity);
  cfg.d_spec = MLPSpec::dense({2, 16, 1}, Hidden::LeakyRelu, Output::Sigmoid);
  return cfg;
}

Matrix toy_data(std::uint64_t seed, Index n = 200) {
  return gaussian_ring(8, 2.0, 0.04, n / 8, seed).first.features;
}

Matrix sample_rows_ref(const Matrix& data, Index n, Rng& rng) {
  Matrix out(n, data.cols());
  for (Index i = 0; i < n; ++i)
    out.row(i) = data.row(rng.uniform_int(data.rows()));
  return out;
}

GradSet add(const GradSet& a, const GradSet& b) {
  GradSet sum = a;
  for (std::size_t l = 0; l < sum.layers.size(); ++l) {
    sum.layers[l].W += b.layers[l].W;
    sum.layers[l].b += b.layers[l].b;
  }
  return sum;
}

/// Reference implementation of a conventional single-objective GAN loop,
/// using the same primitive calls and stream discipline as the trainer.
std::pair<ParamSet, ParamSet> plain_gan(const TrainerConfig& cfg,
                                        const Matrix& data,
                                        MutationObjective obj) {
  Rng init_rng(derive_seed(cfg.seed, "trainer.init"));
  ParamSet g = init_params(cfg.g_spec, init_rng);
  OptState g_opt = OptState::make(cfg.g_opt, g);
  ParamSet d = init_params(cfg.d_spec, init_rng);
  OptState d_opt = OptState::make(cfg.d_opt, d);
  Rng latent_rng(derive_seed(cfg.seed, "trainer.latent"));
  Rng data_rng(derive_seed(cfg.seed, "trainer.data"));

  for (long it = 0; it < cfg.iterations; ++it) {
    const Matrix z = latent_rng.normal_matrix(cfg.batch_size, cfg.latent_dim);
    for (int s = 0; s < cfg.offspring_steps; ++s) {
      Tape g_tape, d_tape;
      const Matrix fakes = forward(cfg.g_spec, g, z, g_tape);
      const Matrix d_out = forward(cfg.d_spec, d, fakes, d_tape);
      const GenLoss gl = gen_loss(obj, d_out.col(0));
      const auto [d_grads, fake_grad] =
          backward(cfg.d_spec, d, d_tape, gl.d_fake_grad);
      const auto [g_grads, in_grad] =
          backward(cfg.g_spec, g, g_tape, fake_grad);
      opt_step(g, g_grads, g_opt);
    }
    for (int s = 0; s < cfg.d_steps; ++s) {
      const Matrix real = sample_rows_ref(data, cfg.batch_size, data_rng);
      const Matrix z2 =
          latent_rng.normal_matrix(cfg.batch_size, cfg.latent_dim);
      const Matrix fakes = forward(cfg.g_spec, g, z2);
      Tape rt, ft;
      const Matrix d_real = forward(cfg.d_spec, d, real, rt);
      const Matrix d_fake = forward(cfg.d_spec, d, fakes, ft);
      const DiscLoss dl = disc_loss(d_real.col(0), d_fake.col(0));
      const auto [gr, ir] = backward(cfg.d_spec, d, rt, dl.d_real_grad);
      const auto [gf, iff] = backward(cfg.d_spec, d, ft, dl.d_fake_grad);
      opt_step(d, add(gr, gf), d_opt);
    }
  }
  return {g, d};
}

}  // namespace

TEST_CASE("spawn_offspring: zero learning rate returns the parent") {
  TrainerConfig cfg = toy_config(TrainMode::Aggan, 1);
  cfg.g_opt = {OptKind::Sgd, 0.0};
  EvoState state = init_state(cfg);
  const Matrix z = state.latent_rng.normal_matrix(cfg.batch_size, 2);
  const Candidate child = spawn_offspring(cfg, state.g, state.d,
                                          MutationObjective::Minimax, z, 1);
  CHECK(bit_equal(child.params, state.g.params));
}

TEST_CASE("spawn_offspring: different objectives give different offspring") {
  const TrainerConfig cfg = toy_config(TrainMode::Aggan, 2);
  EvoState state = init_state(cfg);
  const Matrix z = state.latent_rng.normal_matrix(cfg.batch_size, 2);
  const Candidate a = spawn_offspring(cfg, state.g, state.d,
                                      MutationObjective::Minimax, z, 1);
  const Candidate b = spawn_offspring(cfg, state.g, state.d,
                                      MutationObjective::LeastSquares, z, 1);
  CHECK_FALSE(bit_equal(a.params, b.params));
}

TEST_CASE("spawn_offspring: parent is never mutated") {
  const TrainerConfig cfg = toy_config(TrainMode::Aggan, 3);
  EvoState state = init_state(cfg);
  const double before = checksum(state.g.params);
  const Matrix z = state.latent_rng.normal_matrix(cfg.batch_size, 2);
  for (MutationObjective obj : kAllObjectives)
    spawn_offspring(cfg, state.g, state.d, obj, z, 2);
  CHECK(checksum(state.g.params) == before);
}

TEST_CASE("spawn_offspring: one nonsaturating step reduces its own loss") {
  TrainerConfig cfg = toy_config(TrainMode::Aggan, 4);
  cfg.g_opt = {OptKind::Sgd, 1e-3};
  EvoState state = init_state(cfg);
  const Matrix z = state.latent_rng.normal_matrix(cfg.batch_size, 2);

  auto loss_of = [&](const ParamSet& g) {
    const Matrix fakes = forward(cfg.g_spec, g, z);
    const Matrix d_out = forward(cfg.d_spec, state.d, fakes);
    return gen_loss(MutationObjective::NonSaturating, d_out.col(0)).loss;
  };
  const double before = loss_of(state.g.params);
  const Candidate child = spawn_offspring(
      cfg, state.g, state.d, MutationObjective::NonSaturating, z, 1);
  CHECK(loss_of(child.params) < before);
}

TEST_CASE("evaluate_offspring: duplicates score identically, deterministically") {
  const TrainerConfig cfg = toy_config(TrainMode::Aggan, 5);
  EvoState state = init_state(cfg);
  const Matrix z = state.eval_rng.normal_matrix(cfg.batch_size, 2);
  const Matrix real = toy_data(5, 64);

  const auto scores = evaluate_offspring(
      cfg, {&state.g.params, &state.g.params}, state.d, z, real, 0.5);
  CHECK(scores[0].combined == scores[1].combined);

  const auto again = evaluate_offspring(
      cfg, {&state.g.params, &state.g.params}, state.d, z, real, 0.5);
  CHECK(scores[0].combined == again[0].combined);
}

TEST_CASE("evaluate_offspring: gamma 0 ranks by mean discriminator score") {
  const TrainerConfig cfg = toy_config(TrainMode::Aggan, 6);
  EvoState state = init_state(cfg);
  Rng rng(99);
  const Matrix z = rng.normal_matrix(cfg.batch_size, 2);
  const Matrix real = toy_data(6, 64);

  Rng perturb(100);
  ParamSet other = state.g.params;
  for (auto& layer : other.layers)
    layer.W += 0.1 * perturb.normal_matrix(layer.W.rows(), layer.W.cols());

  const auto scores = evaluate_offspring(
      cfg, {&state.g.params, &other}, state.d, z, real, 0.0);
  const double mean_a =
      forward(cfg.d_spec, state.d,
              forward(cfg.g_spec, state.g.params, z)).col(0).mean();
  const double mean_b =
      forward(cfg.d_spec, state.d, forward(cfg.g_spec, other, z)).col(0).mean();
  CHECK(scores[0].combined == doctest::Approx(mean_a).epsilon(1e-12));
  CHECK(scores[1].combined == doctest::Approx(mean_b).epsilon(1e-12));
  CHECK((scores[0].combined > scores[1].combined) == (mean_a > mean_b));
}

TEST_CASE("select_best: maximum wins, ties to the lowest index") {
  auto mk = [](double f) {
    FitnessScore s;
    s.combined = f;
    return s;
  };
  CHECK(select_best({mk(0.2), mk(0.9), mk(0.5)}) == 1);
  CHECK(select_best({mk(0.7)}) == 0);
  CHECK(select_best({mk(0.5), mk(0.5)}) == 0);
  CHECK_THROWS_AS(select_best({}), ArgumentError);
}

TEST_CASE("train: zero iterations returns the initial parameters") {
  TrainerConfig cfg = toy_config(TrainMode::Aggan, 7);
  cfg.iterations = 0;
  const Matrix data = toy_data(7);
  const TrainResult result = train(cfg, data);
  const EvoState fresh = init_state(cfg);
  CHECK(bit_equal(result.generator, fresh.g.params));
  CHECK(bit_equal(result.discriminator, fresh.d));
}

TEST_CASE("train: mode none skips training") {
  TrainerConfig cfg = toy_config(TrainMode::None, 8);
  cfg.objectives = {MutationObjective::Minimax};
  cfg.mode = TrainMode::None;
  const TrainResult result = train(cfg, toy_data(8));
  CHECK(result.history.empty());
}

TEST_CASE("train: bit-identical reruns under the same seed") {
  const TrainerConfig cfg = toy_config(TrainMode::Aggan, 9);
  const Matrix data = toy_data(9);
  const TrainResult a = train(cfg, data);
  const TrainResult b = train(cfg, data);
  CHECK(bit_equal(a.generator, b.generator));
  CHECK(bit_equal(a.elite, b.elite));
  REQUIRE(a.history.size() == b.history.size());
  for (std::size_t i = 0; i < a.history.size(); ++i) {
    CHECK(a.history[i].f_parent == b.history[i].f_parent);
    CHECK(a.history[i].chosen == b.history[i].chosen);
    CHECK(a.history[i].accepted == b.history[i].accepted);
  }
}

TEST_CASE("train: elite fitness is non-decreasing") {
  TrainerConfig cfg = toy_config(TrainMode::Aggan, 10);
  cfg.iterations = 300;
  const TrainResult result = train(cfg, toy_data(10));
  for (std::size_t i = 1; i < result.history.size(); ++i)
    CHECK(result.history[i].elite_fitness >=
          result.history[i - 1].elite_fitness);
}

TEST_CASE("structural reduction: infinite temperature reproduces egan") {
  TrainerConfig hot = toy_config(TrainMode::Aggan, 11);
  hot.t_init = 1e12;
  hot.alpha = 1.0;
  hot.iterations = 120;
  TrainerConfig egan = hot;
  egan.mode = TrainMode::Egan;

  const Matrix data = toy_data(11);
  const TrainResult a = train(hot, data);
  const TrainResult b = train(egan, data);
  CHECK(bit_equal(a.generator, b.generator));
  CHECK(bit_equal(a.discriminator, b.discriminator));
  CHECK(bit_equal(a.elite, b.elite));
}

TEST_CASE("structural reduction: fixed mode is a plain GAN loop") {
  for (OptKind kind : {OptKind::Sgd, OptKind::Adam}) {
    TrainerConfig cfg = toy_config(TrainMode::Fixed, 12);
    cfg.objectives = {MutationObjective::NonSaturating};
    cfg.g_opt = {kind, 1e-3};
    cfg.d_opt = {kind, 1e-3};
    cfg.iterations = 60;
    const Matrix data = toy_data(12);

    const TrainResult traced = train(cfg, data);
    const auto [g_ref, d_ref] =
        plain_gan(cfg, data, MutationObjective::NonSaturating);
    CHECK(bit_equal(traced.generator, g_ref));
    CHECK(bit_equal(traced.discriminator, d_ref));
  }
}

TEST_CASE("acceptance statistics match the metropolis probabilities") {
  // Frozen temperature; over the worse-offspring iterations the acceptance
  // count is Poisson-binomial with mean sum(P_i), variance sum(P_i (1-P_i)).
  TrainerConfig cfg = toy_config(TrainMode::Aggan, 13);
  cfg.t_init = 0.2;
  cfg.alpha = 1.0;
  cfg.iterations = 600;
  const TrainResult result = train(cfg, toy_data(13));

  double mean = 0.0, var = 0.0;
  long hits = 0, events = 0;
  for (const IterationRecord& r : result.history) {
    if (!r.drew) continue;
    ++events;
    mean += r.prob;
    var += r.prob * (1.0 - r.prob);
    if (r.accepted) ++hits;
  }
  REQUIRE(events > 30);
  CHECK(std::abs(static_cast<double>(hits) - mean) <=
        3.0 * std::sqrt(std::max(var, 1.0)));
}

TEST_CASE("trainer config validation") {
  TrainerConfig cfg = toy_config(TrainMode::Fixed, 14);
  cfg.objectives = {MutationObjective::Minimax, MutationObjective::LeastSquares};
  CHECK_THROWS_AS(cfg.validate(), ArgumentError);

  TrainerConfig bad_alpha = toy_config(TrainMode::Aggan, 15);
  bad_alpha.alpha = 1.5;
  CHECK_THROWS_WITH_AS(bad_alpha.validate(), "alpha must lie in (0,1]",
                       ArgumentError);
}
