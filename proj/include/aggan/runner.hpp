#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aggan/config.hpp"
#include "aggan/data.hpp"
#include "aggan/metrics.hpp"

namespace aggan {

struct RunOptions {
  std::string out_override;
  std::vector<std::uint64_t> seeds_override;
  bool overwrite = false;
  int jobs = 1;
};

struct BuiltDataset {
  Dataset data;
  std::optional<MixtureSpec> mixture;  // minority ground truth when known
};

BuiltDataset build_dataset(const DatasetConfig& cfg, std::uint64_t seed);

/// Resolves the binary task labels: with negative = -1 every other class is
/// merged, and the task becomes positive=1 vs negative=0.
struct BinaryTask {
  Dataset data;
  int positive;
  int negative;
};
BinaryTask prepare_binary(const DatasetConfig& cfg, const Dataset& data);

struct BenchCell {
  BenchMethod method;
  double ir;
  std::uint64_t seed;
  Metrics metrics;
};

/// One (method, ir, seed) bench pipeline: imbalance the task, rebalance it
/// per the method, train the classifier, score the balanced test split.
BenchCell run_bench_cell(const ExperimentConfig& cfg, BenchMethod method,
                         double ir, std::uint64_t seed);

/// First iteration whose elite fitness reaches 99% of the final value.
long convergence_epoch(const std::vector<IterationRecord>& history);

Landscape build_landscape(const TheorySettings& cfg);

/// Executes the configured experiment. Exit status: 0 success, 3 every seed
/// failed, 4 some seeds failed.
int run_experiment(const ExperimentConfig& cfg, const RunOptions& opts);

/// Re-emits a 2-D sample file with a nearest-mode assignment column.
void run_scatter(const ExperimentConfig& cfg, const std::string& in_csv,
                 const std::string& out_csv);

}  // namespace aggan
