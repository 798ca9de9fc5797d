#pragma once

#include <string_view>
#include <vector>

#include "aggan/annealing.hpp"
#include "aggan/losses.hpp"
#include "aggan/net.hpp"
#include "aggan/optim.hpp"
#include "aggan/rng.hpp"

namespace aggan {

/// aggan   full loop: offspring selection + Metropolis acceptance + cooling
/// egan    offspring selection, best offspring always accepted
/// fixed   single objective, always accepted (a conventional GAN loop)
/// none    no training; the identity pipeline used by the plain baseline
enum class TrainMode { Aggan, Egan, Fixed, None };

std::string_view mode_name(TrainMode mode);
TrainMode mode_from_name(std::string_view name);

struct TrainerConfig {
  TrainMode mode = TrainMode::Aggan;
  std::vector<MutationObjective> objectives{kAllObjectives.begin(),
                                            kAllObjectives.end()};
  int offspring_steps = 1;
  Index batch_size = 64;
  Index latent_dim = 2;
  double t_init = 1000.0;
  double alpha = 0.999;
  double gamma_f = 0.5;
  OptConfig g_opt{OptKind::Adam, 1e-3};
  OptConfig d_opt{OptKind::Adam, 1e-3};
  int d_steps = 1;
  long iterations = 2000;
  std::uint64_t seed = 0;
  MLPSpec g_spec;
  MLPSpec d_spec;
  long sample_every = 0;  // dump generated samples every k iterations; 0 = off

  void validate() const;
};

/// Generator parameters together with their optimizer state; offspring carry
/// both so an accepted child continues its parent's moment estimates.
struct Candidate {
  ParamSet params;
  OptState opt;
};

struct IterationRecord {
  long iteration = 0;
  double f_parent = 0.0;
  std::vector<double> offspring_fitness;  // combined score per objective
  int chosen = 0;                         // index into cfg.objectives
  double delta = 0.0;
  double prob = 1.0;
  double draw = 0.0;
  bool drew = false;
  bool accepted = true;
  double temperature = 0.0;
  double d_loss = 0.0;
  double elite_fitness = 0.0;
};

struct EvoState {
  Candidate g;
  ParamSet d;
  OptState d_opt;
  ParamSet elite;
  FitnessScore elite_fitness;
  bool has_elite = false;
  AnnealState anneal;
  std::vector<IterationRecord> history;

  Rng latent_rng;
  Rng data_rng;
  Rng eval_rng;
  Rng accept_rng;
};

struct TrainResult {
  ParamSet generator;  // final g
  ParamSet elite;      // best-fit generator observed (the deliverable)
  ParamSet discriminator;
  std::vector<IterationRecord> history;
  std::vector<std::pair<long, Matrix>> sample_dumps;
};

/// Deep-copies the parent and advances it `steps` optimizer steps on
/// gen_loss(obj) against the frozen discriminator. The parent is never
/// touched.
Candidate spawn_offspring(const TrainerConfig& cfg, const Candidate& parent,
                          const ParamSet& d, MutationObjective obj,
                          const Matrix& latent, int steps);

/// Scores every candidate against the same frozen discriminator and the same
/// evaluation batches.
std::vector<FitnessScore> evaluate_offspring(
    const TrainerConfig& cfg, const std::vector<const ParamSet*>& candidates,
    const ParamSet& d, const Matrix& eval_latent, const Matrix& eval_real,
    double gamma_f);

/// Index of the maximum combined fitness; ties break to the lowest index.
int select_best(const std::vector<FitnessScore>& scores);

EvoState init_state(const TrainerConfig& cfg);

/// One evolutionary iteration: parent fitness, brood, selection, Metropolis
/// update, elite tracking, cooling, discriminator update.
void evolve_step(EvoState& state, const TrainerConfig& cfg,
                 const Matrix& data);

/// Runs cfg.iterations steps over `data` (rows are training samples of the
/// target class). Returns the final generator, the elite and the full
/// history.
TrainResult train(const TrainerConfig& cfg, const Matrix& data);

/// G(z) with z ~ N(0,1), n rows.
Matrix sample_generator(const MLPSpec& g_spec, const ParamSet& g, Index n,
                        Rng& rng);

}  // namespace aggan
