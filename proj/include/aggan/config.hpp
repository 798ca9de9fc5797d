#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aggan/classifier.hpp"
#include "aggan/theory.hpp"
#include "aggan/trainer.hpp"

namespace aggan {

enum class ExperimentKind { Train, Bench, Theory, Sweep };
enum class DatasetType { Ring, Grid, TwoRings, Csv };
enum class BenchMethod { Cn, OsCn, FixedGan, Egan, Aggan };

std::string_view kind_name(ExperimentKind kind);
std::string_view method_name(BenchMethod method);
BenchMethod method_from_name(std::string_view name);

struct DatasetConfig {
  DatasetType type = DatasetType::TwoRings;
  int k = 8;
  double radius = 2.0;
  double sigma = 0.04;
  Index n_per_mode = 1000;  // ring, grid
  Index n_per_class = 2500; // two_rings
  int side = 5;
  double spacing = 2.0;
  std::string path;         // csv
  int positive = 1;
  int negative = 0;         // -1 merges every other class into the negative
  double scale = 1.0;
  int train_class = -1;     // kind=train: generator data class, -1 = all rows
};

/// Trainer knobs as configured; network specs are materialized per dataset.
struct TrainerSettings {
  TrainMode mode = TrainMode::Aggan;
  MutationObjective objective = MutationObjective::Minimax;  // fixed mode
  long iters = 2000;
  Index batch = 64;
  Index latent = 2;
  int steps = 1;
  double t_init = 1000.0;
  double alpha = 0.999;
  double gamma_f = 0.5;
  std::vector<Index> g_hidden = {64, 64};
  std::vector<Index> d_hidden = {64, 64};
  Hidden g_act = Hidden::Relu;
  Hidden d_act = Hidden::LeakyRelu;
  OptConfig g_opt{OptKind::Adam, 1e-3};
  OptConfig d_opt{OptKind::Adam, 1e-3};
  int d_steps = 1;
  long sample_every = 0;
};

TrainerConfig materialize_trainer(const TrainerSettings& settings,
                                  Index data_dim, std::uint64_t seed);

struct BenchSettings {
  std::vector<double> irs = {10.0, 100.0};
  std::vector<BenchMethod> methods = {BenchMethod::Cn, BenchMethod::OsCn,
                                      BenchMethod::Aggan};
  std::vector<Index> cls_hidden = {32, 32};
  int cls_epochs = 200;
  Index cls_batch = 64;
  double cls_lr = 1e-3;
  Index coverage_samples = 8000;
  long min_per_mode = 20;
};

struct SweepGrid {
  std::vector<double> t = {100.0, 1000.0, 10000.0};
  std::vector<double> alpha = {0.99, 0.999};
};

struct TheorySettings {
  std::string landscape = "rugged";  // rugged | ring | trap | file
  int states = 64;
  int chords = 16;
  std::uint64_t landscape_seed = 7;
  std::string file;
  int n_m = 3;
  double t_init = 1.0;
  double alpha = 0.999;
  double t_min = 1e-8;
  ParentRule parent = ParentRule::Current;
  bool greedy = false;
  long budget = 5000;
  long runs = 1000;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Train;
  std::vector<std::uint64_t> seeds = {0};
  std::string out = "runs/out";
  DatasetConfig dataset;
  TrainerSettings trainer;
  BenchSettings bench;
  SweepGrid sweep;
  TheorySettings theory;
};

/// Parses the sectioned key=value format. Unknown keys, malformed lines and
/// out-of-range values fail with line diagnostics. Referenced files must
/// exist.
ExperimentConfig parse_config(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text,
                                   const std::string& origin = "<string>");

/// Canonical text with every default materialized; parse(serialize(c)) is
/// the identity.
std::string serialize_config(const ExperimentConfig& cfg);

}  // namespace aggan
