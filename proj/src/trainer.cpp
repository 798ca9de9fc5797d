#include "aggan/trainer.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "aggan/error.hpp"

namespace aggan {

std::string_view mode_name(TrainMode mode) {
  switch (mode) {
    case TrainMode::Aggan:
      return "aggan";
    case TrainMode::Egan:
      return "egan";
    case TrainMode::Fixed:
      return "fixed";
    case TrainMode::None:
      return "none";
  }
  return "?";
}

TrainMode mode_from_name(std::string_view name) {
  if (name == "aggan") return TrainMode::Aggan;
  if (name == "egan") return TrainMode::Egan;
  if (name == "fixed") return TrainMode::Fixed;
  if (name == "none") return TrainMode::None;
  throw ArgumentError("unknown trainer mode '" + std::string(name) + "'");
}

void TrainerConfig::validate() const {
  if (objectives.empty())
    throw ArgumentError("trainer: at least one objective required");
  if (objectives.size() > kAllObjectives.size())
    throw ArgumentError("trainer: more mutations than available objectives");
  if (mode == TrainMode::Fixed && objectives.size() != 1)
    throw ArgumentError("trainer: fixed mode carries exactly one objective");
  if (offspring_steps < 1)
    throw ArgumentError("trainer: offspring_steps must be >= 1");
  if (batch_size < 1 || latent_dim < 1)
    throw ArgumentError("trainer: batch size and latent dim must be >= 1");
  if (t_init <= 0.0) throw ArgumentError("trainer: t_init must be positive");
  if (alpha <= 0.0 || alpha > 1.0)
    throw ArgumentError("alpha must lie in (0,1]");
  if (gamma_f < 0.0) throw ArgumentError("trainer: gamma_f must be >= 0");
  if (d_steps < 1) throw ArgumentError("trainer: d_steps must be >= 1");
  if (iterations < 0) throw ArgumentError("trainer: iterations must be >= 0");
  g_spec.validate();
  d_spec.validate();
  if (g_spec.input_dim() != latent_dim)
    throw DimensionError("generator input width must equal the latent dim");
  if (g_spec.output_dim() != d_spec.input_dim())
    throw DimensionError("generator output width must match discriminator input");
  if (d_spec.output_dim() != 1 || d_spec.output != Output::Sigmoid)
    throw ArgumentError("discriminator must end in a single sigmoid unit");
}

namespace {

Matrix sample_rows(const Matrix& data, Index n, Rng& rng) {
  Matrix out(n, data.cols());
  for (Index i = 0; i < n; ++i)
    out.row(i) = data.row(rng.uniform_int(data.rows()));
  return out;
}

GradSet add_grads(const GradSet& a, const GradSet& b) {
  GradSet sum = a;
  for (std::size_t l = 0; l < sum.layers.size(); ++l) {
    sum.layers[l].W += b.layers[l].W;
    sum.layers[l].b += b.layers[l].b;
  }
  return sum;
}

}  // namespace

Candidate spawn_offspring(const TrainerConfig& cfg, const Candidate& parent,
                          const ParamSet& d, MutationObjective obj,
                          const Matrix& latent, int steps) {
  Candidate child = parent;  // deep copy of parameters and optimizer state
  for (int s = 0; s < steps; ++s) {
    Tape g_tape, d_tape;
    const Matrix fakes = forward(cfg.g_spec, child.params, latent, g_tape);
    const Matrix d_out = forward(cfg.d_spec, d, fakes, d_tape);
    const GenLoss gl = gen_loss(obj, d_out.col(0));
    if (!std::isfinite(gl.loss))
      throw NumericError("non-finite loss for objective '" +
                         std::string(objective_name(obj)) + "'");
    const auto [d_grads, fake_grad] =
        backward(cfg.d_spec, d, d_tape, gl.d_fake_grad);
    const auto [g_grads, input_grad] =
        backward(cfg.g_spec, child.params, g_tape, fake_grad);
    opt_step(child.params, g_grads, child.opt);
  }
  return child;
}

std::vector<FitnessScore> evaluate_offspring(
    const TrainerConfig& cfg, const std::vector<const ParamSet*>& candidates,
    const ParamSet& d, const Matrix& eval_latent, const Matrix& eval_real,
    double gamma_f) {
  // The real-batch half of the discriminator objective is shared by every
  // candidate; compute it once.
  Tape real_tape;
  const Matrix d_real = forward(cfg.d_spec, d, eval_real, real_tape);

  std::vector<FitnessScore> scores;
  scores.reserve(candidates.size());
  for (const ParamSet* g : candidates) {
    const Matrix fakes = forward(cfg.g_spec, *g, eval_latent);
    Tape fake_tape;
    const Matrix d_fake = forward(cfg.d_spec, d, fakes, fake_tape);
    const DiscLoss dl = disc_loss(d_real.col(0), d_fake.col(0));
    const auto [real_grads, real_in] =
        backward(cfg.d_spec, d, real_tape, dl.d_real_grad);
    const auto [fake_grads, fake_in] =
        backward(cfg.d_spec, d, fake_tape, dl.d_fake_grad);
    const double gnorm = grad_norm(add_grads(real_grads, fake_grads));
    scores.push_back(fitness(d_fake.col(0), gnorm, gamma_f));
  }
  return scores;
}

int select_best(const std::vector<FitnessScore>& scores) {
  if (scores.empty()) throw ArgumentError("select_best: empty score list");
  int best = 0;
  for (int i = 1; i < static_cast<int>(scores.size()); ++i)
    if (scores[i].combined > scores[best].combined) best = i;
  return best;
}

EvoState init_state(const TrainerConfig& cfg) {
  cfg.validate();
  Rng init_rng(derive_seed(cfg.seed, "trainer.init"));
  EvoState state;
  state.g.params = init_params(cfg.g_spec, init_rng);
  state.g.opt = OptState::make(cfg.g_opt, state.g.params);
  state.d = init_params(cfg.d_spec, init_rng);
  state.d_opt = OptState::make(cfg.d_opt, state.d);
  state.elite = state.g.params;
  state.elite_fitness.combined = -std::numeric_limits<double>::infinity();
  state.has_elite = false;
  state.anneal = AnnealState::make(cfg.t_init, cfg.alpha);
  state.latent_rng = Rng(derive_seed(cfg.seed, "trainer.latent"));
  state.data_rng = Rng(derive_seed(cfg.seed, "trainer.data"));
  state.eval_rng = Rng(derive_seed(cfg.seed, "trainer.eval"));
  state.accept_rng = Rng(derive_seed(cfg.seed, "trainer.accept"));
  return state;
}

void evolve_step(EvoState& state, const TrainerConfig& cfg,
                 const Matrix& data) {
  if (data.rows() == 0) throw ArgumentError("evolve_step: empty data");

  // Evaluation batches are drawn once; parent and every offspring are scored
  // against the same frozen discriminator on the same batches.
  const Matrix eval_latent =
      state.eval_rng.normal_matrix(cfg.batch_size, cfg.latent_dim);
  const Matrix eval_real = sample_rows(data, cfg.batch_size, state.eval_rng);

  const FitnessScore f_parent =
      evaluate_offspring(cfg, {&state.g.params}, state.d, eval_latent,
                         eval_real, cfg.gamma_f)[0];

  // Latent batches are pre-drawn in objective-index order.
  std::vector<Matrix> latents;
  latents.reserve(cfg.objectives.size());
  for (std::size_t c = 0; c < cfg.objectives.size(); ++c)
    latents.push_back(
        state.latent_rng.normal_matrix(cfg.batch_size, cfg.latent_dim));

  std::vector<Candidate> brood;
  brood.reserve(cfg.objectives.size());
  for (std::size_t c = 0; c < cfg.objectives.size(); ++c)
    brood.push_back(spawn_offspring(cfg, state.g, state.d, cfg.objectives[c],
                                    latents[c], cfg.offspring_steps));

  std::vector<const ParamSet*> views;
  for (const Candidate& cand : brood) views.push_back(&cand.params);
  const std::vector<FitnessScore> scores = evaluate_offspring(
      cfg, views, state.d, eval_latent, eval_real, cfg.gamma_f);
  const int best = select_best(scores);

  IterationRecord rec;
  rec.iteration = static_cast<long>(state.history.size());
  rec.f_parent = f_parent.combined;
  for (const FitnessScore& s : scores) rec.offspring_fitness.push_back(s.combined);
  rec.chosen = best;
  rec.temperature = state.anneal.t_current;

  if (scores[best].combined >= f_parent.combined) {
    rec.accepted = true;
    rec.prob = 1.0;
  } else {
    rec.delta = f_parent.combined - scores[best].combined;
    if (cfg.mode == TrainMode::Aggan) {
      rec.prob = metropolis_probability(f_parent.combined,
                                        scores[best].combined,
                                        state.anneal.t_current);
      const MetropolisDecision decision = accept(rec.prob, state.accept_rng);
      rec.draw = decision.draw;
      rec.drew = true;
      rec.accepted = decision.accepted;
    } else {
      // egan / fixed keep the best offspring unconditionally
      rec.prob = 1.0;
      rec.accepted = true;
    }
  }
  if (rec.accepted) state.g = std::move(brood[best]);

  if (!state.has_elite ||
      scores[best].combined > state.elite_fitness.combined) {
    state.elite = rec.accepted ? state.g.params : brood[best].params;
    state.elite_fitness = scores[best];
    state.has_elite = true;
  }
  rec.elite_fitness = state.elite_fitness.combined;

  state.anneal = cool(state.anneal);

  // Environment update: the discriminator trains against the accepted
  // generator's fakes.
  for (int s = 0; s < cfg.d_steps; ++s) {
    const Matrix real = sample_rows(data, cfg.batch_size, state.data_rng);
    const Matrix z =
        state.latent_rng.normal_matrix(cfg.batch_size, cfg.latent_dim);
    const Matrix fakes = forward(cfg.g_spec, state.g.params, z);
    Tape real_tape, fake_tape;
    const Matrix d_real = forward(cfg.d_spec, state.d, real, real_tape);
    const Matrix d_fake = forward(cfg.d_spec, state.d, fakes, fake_tape);
    const DiscLoss dl = disc_loss(d_real.col(0), d_fake.col(0));
    const auto [gr, in_r] = backward(cfg.d_spec, state.d, real_tape, dl.d_real_grad);
    const auto [gf, in_f] = backward(cfg.d_spec, state.d, fake_tape, dl.d_fake_grad);
    opt_step(state.d, add_grads(gr, gf), state.d_opt);
    rec.d_loss = dl.loss;
  }

  state.history.push_back(std::move(rec));
}

TrainResult train(const TrainerConfig& cfg, const Matrix& data) {
  cfg.validate();
  if (data.rows() == 0) throw ArgumentError("train: empty dataset");
  if (data.cols() != cfg.g_spec.output_dim())
    throw DimensionError("data dimension does not match the generator output");

  EvoState state = init_state(cfg);
  Rng dump_rng(derive_seed(cfg.seed, "trainer.dump"));

  TrainResult result;
  const long iters = cfg.mode == TrainMode::None ? 0 : cfg.iterations;
  for (long it = 0; it < iters; ++it) {
    try {
      evolve_step(state, cfg, data);
    } catch (const NumericError& e) {
      throw NumericError("iteration " + std::to_string(it) + ": " + e.what());
    }
    if (cfg.sample_every > 0 && (it + 1) % cfg.sample_every == 0)
      result.sample_dumps.emplace_back(
          it + 1, sample_generator(cfg.g_spec, state.g.params, 1000, dump_rng));
  }

  result.generator = state.g.params;
  result.elite = state.has_elite ? state.elite : state.g.params;
  result.discriminator = state.d;
  result.history = std::move(state.history);
  return result;
}

Matrix sample_generator(const MLPSpec& g_spec, const ParamSet& g, Index n,
                        Rng& rng) {
  const Matrix z = rng.normal_matrix(n, g_spec.input_dim());
  return forward(g_spec, g, z);
}

}  // namespace aggan
