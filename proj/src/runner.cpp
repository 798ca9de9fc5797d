#include "aggan/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <thread>

#include <json.hpp>

#include "aggan/checkpoint.hpp"
#include "aggan/csv.hpp"
#include "aggan/error.hpp"
#include "aggan/oversample.hpp"
#include "aggan/trainer.hpp"
#include "aggan/version.hpp"

namespace fs = std::filesystem;

namespace aggan {

namespace {

std::string timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

std::string num(double v) { return fmt_full(v); }

/// Runs fn(0..n-1) on up to `jobs` threads; per-index errors are captured.
std::vector<std::string> run_parallel(int jobs, std::size_t n,
                                      const std::function<void(std::size_t)>& fn) {
  std::vector<std::string> errors(n);
  if (n == 0) return errors;
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      } catch (...) {
        errors[i] = "unknown error";
      }
    }
  };
  const int n_threads = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return errors;
}

}  // namespace

BuiltDataset build_dataset(const DatasetConfig& cfg, std::uint64_t seed) {
  BuiltDataset out;
  switch (cfg.type) {
    case DatasetType::Ring: {
      auto [data, mix] =
          gaussian_ring(cfg.k, cfg.radius, cfg.sigma, cfg.n_per_mode, seed);
      out.data = std::move(data);
      out.mixture = std::move(mix);
      break;
    }
    case DatasetType::Grid: {
      auto [data, mix] =
          gaussian_grid(cfg.side, cfg.spacing, cfg.sigma, cfg.n_per_mode, seed);
      out.data = std::move(data);
      out.mixture = std::move(mix);
      break;
    }
    case DatasetType::TwoRings: {
      auto [data, mix] =
          two_rings(cfg.k, cfg.radius, cfg.sigma, cfg.n_per_class, seed);
      out.data = std::move(data);
      out.mixture = std::move(mix);
      break;
    }
    case DatasetType::Csv:
      out.data = load_dataset_csv(cfg.path);
      break;
  }
  if (cfg.scale != 1.0) out.data.features *= cfg.scale;
  return out;
}

BinaryTask prepare_binary(const DatasetConfig& cfg, const Dataset& data) {
  if (cfg.negative == -1)
    return {binarize_rest(data, cfg.positive), 1, 0};
  return {data, cfg.positive, cfg.negative};
}

long convergence_epoch(const std::vector<IterationRecord>& history) {
  if (history.empty()) return 0;
  const double final = history.back().elite_fitness;
  const double threshold = final - 0.01 * std::abs(final);
  for (std::size_t i = 0; i < history.size(); ++i)
    if (history[i].elite_fitness >= threshold)
      return static_cast<long>(i) + 1;
  return static_cast<long>(history.size());
}

Landscape build_landscape(const TheorySettings& cfg) {
  if (cfg.landscape == "rugged")
    return make_rugged_landscape(cfg.states, cfg.chords, cfg.landscape_seed);
  if (cfg.landscape == "ring")
    return make_rugged_landscape(cfg.states, 0, cfg.landscape_seed);
  if (cfg.landscape == "trap")
    return make_trap_landscape(cfg.states, cfg.landscape_seed);
  if (cfg.landscape == "file") return load_landscape(cfg.file);
  throw ConfigError("unknown landscape '" + cfg.landscape + "'");
}

namespace {

// ---------------------------------------------------------------- train ----

void write_history(const std::string& path, const TrainerConfig& cfg,
                   const std::vector<IterationRecord>& history) {
  CsvTable t;
  t.header = {"iteration", "f_parent"};
  for (MutationObjective obj : cfg.objectives)
    t.header.push_back("f_" + std::string(objective_name(obj)));
  for (const char* c : {"chosen", "delta", "p", "accepted", "t", "d_loss",
                        "elite_f"})
    t.header.push_back(c);
  for (const IterationRecord& r : history) {
    std::vector<std::string> row = {std::to_string(r.iteration),
                                    num(r.f_parent)};
    for (double f : r.offspring_fitness) row.push_back(num(f));
    row.push_back(std::string(objective_name(cfg.objectives[r.chosen])));
    row.push_back(num(r.delta));
    row.push_back(num(r.prob));
    row.push_back(r.accepted ? "1" : "0");
    row.push_back(num(r.temperature));
    row.push_back(num(r.d_loss));
    row.push_back(num(r.elite_fitness));
    t.rows.push_back(std::move(row));
  }
  write_csv(path, t);
}

void write_decisions(const std::string& path,
                     const TrainerConfig& cfg,
                     const std::vector<IterationRecord>& history) {
  CsvTable t;
  t.header = {"iteration", "t", "f_parent", "f_best_child",
              "delta", "p", "gamma_draw", "accepted"};
  for (const IterationRecord& r : history) {
    t.rows.push_back({std::to_string(r.iteration), num(r.temperature),
                      num(r.f_parent), num(r.offspring_fitness[r.chosen]),
                      num(r.delta), num(r.prob),
                      r.drew ? num(r.draw) : "", r.accepted ? "1" : "0"});
  }
  (void)cfg;
  write_csv(path, t);
}

void write_samples(const std::string& path, const Matrix& samples) {
  CsvTable t;
  for (Index j = 0; j < samples.cols(); ++j)
    t.header.push_back("f" + std::to_string(j));
  for (Index i = 0; i < samples.rows(); ++i) {
    std::vector<std::string> row;
    for (Index j = 0; j < samples.cols(); ++j)
      row.push_back(num(samples(i, j)));
    t.rows.push_back(std::move(row));
  }
  write_csv(path, t);
}

void run_train_seed(const ExperimentConfig& cfg, std::uint64_t seed,
                    const fs::path& dir, const BenchSettings& bench) {
  fs::create_directories(dir);
  const BuiltDataset built =
      build_dataset(cfg.dataset, derive_seed(seed, "train.data"));
  const Matrix rows = cfg.dataset.train_class >= 0
                          ? built.data.rows_of(cfg.dataset.train_class)
                          : built.data.features;
  const TrainerConfig tc =
      materialize_trainer(cfg.trainer, built.data.dim(), seed);
  const TrainResult result = train(tc, rows);

  write_history((dir / "history.csv").string(), tc, result.history);
  write_decisions((dir / "decisions.csv").string(), tc, result.history);
  save_params((dir / "generator_final.params").string(), tc.g_spec,
              result.generator);
  save_params((dir / "generator_elite.params").string(), tc.g_spec,
              result.elite);
  save_params((dir / "discriminator.params").string(), tc.d_spec,
              result.discriminator);
  for (const auto& [iter, samples] : result.sample_dumps)
    write_samples((dir / ("samples_" + std::to_string(iter) + ".csv")).string(),
                  samples);

  if (built.mixture && built.data.dim() == 2) {
    CsvTable t;
    t.header = {"generator", "modes", "hq_ratio", "sym_kl"};
    Rng rng(derive_seed(seed, "train.coverage"));
    for (const char* which : {"final", "elite"}) {
      const ParamSet& g = std::string(which) == "final" ? result.generator
                                                        : result.elite;
      const Matrix samples =
          sample_generator(tc.g_spec, g, bench.coverage_samples, rng);
      const CoverageResult cov =
          mode_coverage(samples, *built.mixture, bench.min_per_mode);
      t.rows.push_back({which, std::to_string(cov.covered),
                        num(cov.hq_ratio), num(cov.sym_kl)});
    }
    write_csv((dir / "coverage.csv").string(), t);
  }
}

// ---------------------------------------------------------------- bench ----

const std::vector<std::string> kMetricsHeader = {
    "method", "ir", "seed", "accuracy", "prec_min", "rec_min", "f1_min",
    "prec_maj", "rec_maj", "f1_maj", "modes", "hq_ratio", "sym_kl"};

std::vector<std::string> metrics_row(const BenchCell& cell) {
  const Metrics& m = cell.metrics;
  const int min_idx = m.class_index(1);
  const int maj_idx = m.class_index(0);
  return {std::string(method_name(cell.method)),
          fmt_g(cell.ir),
          std::to_string(cell.seed),
          num(m.accuracy),
          num(m.precision[min_idx]),
          num(m.recall[min_idx]),
          num(m.f1[min_idx]),
          num(m.precision[maj_idx]),
          num(m.recall[maj_idx]),
          num(m.f1[maj_idx]),
          num(m.covered_modes),
          num(m.hq_ratio),
          num(m.sym_kl)};
}

}  // namespace

BenchCell run_bench_cell(const ExperimentConfig& cfg, BenchMethod method,
                         double ir, std::uint64_t seed) {
  const BuiltDataset built =
      build_dataset(cfg.dataset, derive_seed(seed, "bench.data"));
  const BinaryTask task = prepare_binary(cfg.dataset, built.data);
  const ImbalancedSplit split =
      make_imbalanced(task.data, task.positive, task.negative, ir,
                      derive_seed(seed, "bench.split"));

  BenchCell cell;
  cell.method = method;
  cell.ir = ir;
  cell.seed = seed;

  Dataset train_set = split.train;
  std::optional<CoverageResult> coverage;
  switch (method) {
    case BenchMethod::Cn:
      break;
    case BenchMethod::OsCn:
      train_set = random_oversample(split.train, derive_seed(seed, "bench.ros"));
      break;
    case BenchMethod::FixedGan:
    case BenchMethod::Egan:
    case BenchMethod::Aggan: {
      TrainerSettings settings = cfg.trainer;
      settings.mode = method == BenchMethod::FixedGan ? TrainMode::Fixed
                      : method == BenchMethod::Egan   ? TrainMode::Egan
                                                      : TrainMode::Aggan;
      const TrainerConfig tc = materialize_trainer(
          settings, task.data.dim(),
          derive_seed(seed, std::string("bench.gan.") +
                                std::string(method_name(method))));
      const Matrix minority_rows = split.train.rows_of(task.positive);
      const TrainResult result = train(tc, minority_rows);
      train_set = oversample_with_generator(split.train, tc.g_spec,
                                            result.elite, task.positive,
                                            derive_seed(seed, "bench.synth"));
      if (built.mixture && task.data.dim() == 2) {
        Rng rng(derive_seed(seed, "bench.coverage"));
        const Matrix samples = sample_generator(
            tc.g_spec, result.elite, cfg.bench.coverage_samples, rng);
        coverage =
            mode_coverage(samples, *built.mixture, cfg.bench.min_per_mode);
      }
      break;
    }
  }

  ClassifierConfig ccfg;
  ccfg.hidden = cfg.bench.cls_hidden;
  ccfg.epochs = cfg.bench.cls_epochs;
  ccfg.batch_size = cfg.bench.cls_batch;
  ccfg.opt = {OptKind::Adam, cfg.bench.cls_lr};
  ccfg.seed = derive_seed(seed, "bench.classifier");
  const TrainedClassifier cls = train_classifier(train_set, ccfg);
  cell.metrics = evaluate_classifier(cls, split.test);
  if (coverage) {
    cell.metrics.covered_modes = coverage->covered;
    cell.metrics.hq_ratio = coverage->hq_ratio;
    cell.metrics.sym_kl = coverage->sym_kl;
  }

  // Metrics rows are reported as minority=1, majority=0.
  if (task.positive != 1 || task.negative != 0) {
    // relabel the catalog view for reporting
    Metrics& m = cell.metrics;
    std::vector<int> remapped = m.classes;
    for (int& c : remapped) c = (c == task.positive) ? 1 : 0;
    m.classes = remapped;
  }
  return cell;
}

namespace {

void write_bench_outputs(const fs::path& out,
                         const std::vector<BenchCell>& cells,
                         const ExperimentConfig& cfg) {
  CsvTable metrics;
  metrics.header = kMetricsHeader;
  for (const BenchCell& cell : cells) metrics.rows.push_back(metrics_row(cell));
  write_csv((out / "metrics.csv").string(), metrics);

  // Aggregate means per (method, ir) in config order.
  CsvTable means;
  means.header = kMetricsHeader;
  means.header.erase(means.header.begin() + 2);  // drop the seed column
  for (BenchMethod method : cfg.bench.methods) {
    for (double ir : cfg.bench.irs) {
      std::vector<double> acc(10, 0.0);
      long n = 0;
      for (const BenchCell& cell : cells) {
        if (cell.method != method || cell.ir != ir) continue;
        const Metrics& m = cell.metrics;
        const int mi = m.class_index(1);
        const int ma = m.class_index(0);
        const double vals[10] = {m.accuracy,       m.precision[mi],
                                 m.recall[mi],     m.f1[mi],
                                 m.precision[ma],  m.recall[ma],
                                 m.f1[ma],         m.covered_modes,
                                 m.hq_ratio,       m.sym_kl};
        for (int i = 0; i < 10; ++i) acc[i] += vals[i];
        ++n;
      }
      if (n == 0) continue;
      std::vector<std::string> row = {std::string(method_name(method)),
                                      fmt_g(ir)};
      for (int i = 0; i < 10; ++i) row.push_back(num(acc[i] / n));
      means.rows.push_back(std::move(row));
    }
  }
  write_csv((out / "means.csv").string(), means);
}

// --------------------------------------------------------------- theory ----

struct TheoryRunRow {
  std::uint64_t seed;
  long run;
  int start;
  bool hit;
  long hit_iteration;
  int final_g;
  int final_gb;
  double f_gb;
};

void run_theory_seed(const ExperimentConfig& cfg, const Landscape& land,
                     std::uint64_t seed, std::vector<TheoryRunRow>& rows,
                     HitEstimate& estimate) {
  const std::vector<int> minima = land.global_minima();
  ChainConfig chain;
  chain.n_m = cfg.theory.n_m;
  chain.t_init = cfg.theory.t_init;
  chain.alpha = cfg.theory.alpha;
  chain.t_min = cfg.theory.t_min;
  chain.parent = cfg.theory.parent;
  chain.greedy = cfg.theory.greedy;
  chain.budget = cfg.theory.budget;

  estimate.runs = cfg.theory.runs;
  for (long r = 0; r < cfg.theory.runs; ++r) {
    ChainConfig run_cfg = chain;
    run_cfg.seed = derive_seed(seed, "theory.hit", r);
    const Trajectory traj = run_chain(land, run_cfg);
    TheoryRunRow row;
    row.seed = seed;
    row.run = r;
    row.start = traj.states.front().g;
    row.hit_iteration = -1;
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
      const int gb = traj.states[i].g_b;
      if (std::find(minima.begin(), minima.end(), gb) != minima.end()) {
        row.hit_iteration = static_cast<long>(i);
        break;
      }
    }
    row.hit = row.hit_iteration >= 0;
    row.final_g = traj.states.back().g;
    row.final_gb = traj.states.back().g_b;
    row.f_gb = land.f[row.final_gb];
    if (row.hit) ++estimate.hits;
    rows.push_back(row);
  }
  estimate.fraction =
      estimate.runs ? static_cast<double>(estimate.hits) / estimate.runs : 0.0;
  estimate.std_error =
      estimate.runs
          ? std::sqrt(estimate.fraction * (1.0 - estimate.fraction) /
                      estimate.runs)
          : 0.0;
}

// ---------------------------------------------------------------- sweep ----

struct SweepRow {
  double t;
  double alpha;
  std::uint64_t seed;
  double accuracy;
  double rec_min;
  double f1_min;
  double modes;
  long convergence;
  double elite_fitness;
};

SweepRow run_sweep_cell(const ExperimentConfig& cfg, double t, double alpha,
                        std::uint64_t seed) {
  // The sweep runs the aggan bench pipeline at the first configured IR with
  // the annealing grid point swapped in, and measures when the elite trace
  // reaches its final level.
  ExperimentConfig cell_cfg = cfg;
  cell_cfg.trainer.t_init = t;
  cell_cfg.trainer.alpha = alpha;

  const BuiltDataset built =
      build_dataset(cell_cfg.dataset, derive_seed(seed, "bench.data"));
  const BinaryTask task = prepare_binary(cell_cfg.dataset, built.data);
  const double ir = cfg.bench.irs.front();
  const ImbalancedSplit split =
      make_imbalanced(task.data, task.positive, task.negative, ir,
                      derive_seed(seed, "bench.split"));

  TrainerSettings settings = cell_cfg.trainer;
  settings.mode = TrainMode::Aggan;
  const TrainerConfig tc = materialize_trainer(
      settings, task.data.dim(), derive_seed(seed, "bench.gan.aggan"));
  const Matrix minority_rows = split.train.rows_of(task.positive);
  const TrainResult result = train(tc, minority_rows);

  const Dataset train_set = oversample_with_generator(
      split.train, tc.g_spec, result.elite, task.positive,
      derive_seed(seed, "bench.synth"));

  ClassifierConfig ccfg;
  ccfg.hidden = cfg.bench.cls_hidden;
  ccfg.epochs = cfg.bench.cls_epochs;
  ccfg.batch_size = cfg.bench.cls_batch;
  ccfg.opt = {OptKind::Adam, cfg.bench.cls_lr};
  ccfg.seed = derive_seed(seed, "bench.classifier");
  const TrainedClassifier cls = train_classifier(train_set, ccfg);
  const Metrics m = evaluate_classifier(cls, split.test);

  SweepRow row;
  row.t = t;
  row.alpha = alpha;
  row.seed = seed;
  row.accuracy = m.accuracy;
  const int mi = m.class_index(task.positive);
  row.rec_min = m.recall[mi];
  row.f1_min = m.f1[mi];
  row.modes = std::numeric_limits<double>::quiet_NaN();
  if (built.mixture && task.data.dim() == 2) {
    Rng rng(derive_seed(seed, "bench.coverage"));
    const Matrix samples = sample_generator(tc.g_spec, result.elite,
                                            cfg.bench.coverage_samples, rng);
    row.modes =
        mode_coverage(samples, *built.mixture, cfg.bench.min_per_mode).covered;
  }
  row.convergence = convergence_epoch(result.history);
  row.elite_fitness =
      result.history.empty() ? 0.0 : result.history.back().elite_fitness;
  return row;
}

// ------------------------------------------------------------- manifest ----

void write_manifest(const fs::path& out, const ExperimentConfig& cfg,
                    const std::string& started, const std::string& finished,
                    const std::vector<std::string>& errors,
                    const std::string& status) {
  nlohmann::json j;
  j["tool"] = kVersion;
  j["kind"] = std::string(kind_name(cfg.kind));
  j["started"] = started;
  j["finished"] = finished;
  j["config"] = serialize_config(cfg);
  j["seeds"] = cfg.seeds;
  nlohmann::json runs = nlohmann::json::object();
  for (std::size_t i = 0; i < cfg.seeds.size(); ++i) {
    nlohmann::json r;
    r["status"] = errors[i].empty() ? "ok" : "error";
    if (!errors[i].empty()) r["error"] = errors[i];
    runs[std::to_string(cfg.seeds[i])] = r;
  }
  j["runs"] = runs;
  j["status"] = status;

  const fs::path tmp = out / "manifest.json.tmp";
  {
    std::ofstream f(tmp);
    f << j.dump(2) << '\n';
  }
  fs::rename(tmp, out / "manifest.json");
}

}  // namespace

int run_experiment(const ExperimentConfig& raw_cfg, const RunOptions& opts) {
  ExperimentConfig cfg = raw_cfg;
  if (!opts.out_override.empty()) cfg.out = opts.out_override;
  if (!opts.seeds_override.empty()) cfg.seeds = opts.seeds_override;

  const fs::path out(cfg.out);
  if (fs::exists(out / "manifest.json") && !opts.overwrite)
    throw ConfigError("output directory '" + cfg.out +
                      "' already holds a run; pass --overwrite to replace it");
  fs::create_directories(out);

  const std::string started = timestamp();
  write_manifest(out, cfg, started, "", std::vector<std::string>(cfg.seeds.size()),
                 "running");

  std::vector<std::string> errors(cfg.seeds.size());
  switch (cfg.kind) {
    case ExperimentKind::Train: {
      errors = run_parallel(opts.jobs, cfg.seeds.size(), [&](std::size_t i) {
        run_train_seed(cfg, cfg.seeds[i],
                       out / ("seed_" + std::to_string(cfg.seeds[i])),
                       cfg.bench);
      });
      break;
    }
    case ExperimentKind::Bench: {
      std::vector<std::vector<BenchCell>> per_seed(cfg.seeds.size());
      errors = run_parallel(opts.jobs, cfg.seeds.size(), [&](std::size_t i) {
        for (BenchMethod method : cfg.bench.methods)
          for (double ir : cfg.bench.irs)
            per_seed[i].push_back(
                run_bench_cell(cfg, method, ir, cfg.seeds[i]));
      });
      // merge in (method, ir, seed) order, complete seeds only
      std::vector<BenchCell> cells;
      for (BenchMethod method : cfg.bench.methods)
        for (double ir : cfg.bench.irs)
          for (std::size_t i = 0; i < cfg.seeds.size(); ++i)
            for (const BenchCell& cell : per_seed[i])
              if (cell.method == method && cell.ir == ir &&
                  errors[i].empty())
                cells.push_back(cell);
      write_bench_outputs(out, cells, cfg);
      break;
    }
    case ExperimentKind::Theory: {
      const Landscape land = build_landscape(cfg.theory);
      save_landscape((out / "landscape.csv").string(), land);
      std::vector<std::vector<TheoryRunRow>> per_seed(cfg.seeds.size());
      std::vector<HitEstimate> estimates(cfg.seeds.size());
      errors = run_parallel(opts.jobs, cfg.seeds.size(), [&](std::size_t i) {
        run_theory_seed(cfg, land, cfg.seeds[i], per_seed[i], estimates[i]);
      });
      CsvTable chains;
      chains.header = {"seed", "run",     "start",    "hit",
                       "hit_iteration",   "final_g",  "final_gb", "f_gb"};
      CsvTable hitprob;
      hitprob.header = {"seed", "runs", "hits", "fraction", "std_error",
                        "ci95_lo", "ci95_hi"};
      for (std::size_t i = 0; i < cfg.seeds.size(); ++i) {
        if (!errors[i].empty()) continue;
        for (const TheoryRunRow& r : per_seed[i])
          chains.rows.push_back({std::to_string(r.seed), std::to_string(r.run),
                                 std::to_string(r.start), r.hit ? "1" : "0",
                                 std::to_string(r.hit_iteration),
                                 std::to_string(r.final_g),
                                 std::to_string(r.final_gb), num(r.f_gb)});
        const HitEstimate& e = estimates[i];
        hitprob.rows.push_back(
            {std::to_string(cfg.seeds[i]), std::to_string(e.runs),
             std::to_string(e.hits), num(e.fraction), num(e.std_error),
             num(std::max(0.0, e.fraction - 1.96 * e.std_error)),
             num(std::min(1.0, e.fraction + 1.96 * e.std_error))});
      }
      write_csv((out / "chains.csv").string(), chains);
      write_csv((out / "hitprob.csv").string(), hitprob);
      break;
    }
    case ExperimentKind::Sweep: {
      std::vector<std::vector<SweepRow>> per_seed(cfg.seeds.size());
      errors = run_parallel(opts.jobs, cfg.seeds.size(), [&](std::size_t i) {
        for (double t : cfg.sweep.t)
          for (double alpha : cfg.sweep.alpha)
            per_seed[i].push_back(
                run_sweep_cell(cfg, t, alpha, cfg.seeds[i]));
      });
      CsvTable sweep;
      sweep.header = {"t",     "alpha",       "seed",  "accuracy",
                      "rec_min", "f1_min",    "modes", "convergence_epoch",
                      "elite_fitness"};
      CsvTable means;
      means.header = {"t",     "alpha",  "accuracy", "rec_min", "f1_min",
                      "modes", "convergence_epoch",  "elite_fitness"};
      for (double t : cfg.sweep.t)
        for (double alpha : cfg.sweep.alpha) {
          double acc[6] = {0, 0, 0, 0, 0, 0};
          long n = 0;
          for (std::size_t i = 0; i < cfg.seeds.size(); ++i) {
            if (!errors[i].empty()) continue;
            for (const SweepRow& r : per_seed[i]) {
              if (r.t != t || r.alpha != alpha) continue;
              sweep.rows.push_back(
                  {fmt_g(r.t), fmt_g(r.alpha), std::to_string(r.seed),
                   num(r.accuracy), num(r.rec_min), num(r.f1_min),
                   num(r.modes), std::to_string(r.convergence),
                   num(r.elite_fitness)});
              acc[0] += r.accuracy;
              acc[1] += r.rec_min;
              acc[2] += r.f1_min;
              acc[3] += r.modes;
              acc[4] += static_cast<double>(r.convergence);
              acc[5] += r.elite_fitness;
              ++n;
            }
          }
          if (n == 0) continue;
          means.rows.push_back({fmt_g(t), fmt_g(alpha), num(acc[0] / n),
                                num(acc[1] / n), num(acc[2] / n),
                                num(acc[3] / n), num(acc[4] / n),
                                num(acc[5] / n)});
        }
      write_csv((out / "sweep.csv").string(), sweep);
      write_csv((out / "sweep_means.csv").string(), means);
      break;
    }
  }

  const long failed =
      std::count_if(errors.begin(), errors.end(),
                    [](const std::string& e) { return !e.empty(); });
  const std::string status = failed == 0 ? "ok"
                             : failed == static_cast<long>(errors.size())
                                 ? "failed"
                                 : "partial";
  write_manifest(out, cfg, started, timestamp(), errors, status);
  if (failed == 0) return 0;
  return failed == static_cast<long>(errors.size()) ? 3 : 4;
}

void run_scatter(const ExperimentConfig& cfg, const std::string& in_csv,
                 const std::string& out_csv) {
  const BuiltDataset built =
      build_dataset(cfg.dataset, derive_seed(cfg.seeds.front(), "bench.data"));
  if (!built.mixture || built.data.dim() != 2)
    throw ConfigError("scatter requires a 2-D mixture dataset");
  const MixtureSpec& spec = *built.mixture;

  const CsvTable in = read_csv(in_csv);
  if (in.header.size() < 2)
    throw IoError("'" + in_csv + "': expected at least two feature columns");
  CsvTable out;
  out.header = {"f0", "f1", "mode"};
  for (const auto& row : in.rows) {
    Eigen::RowVectorXd x(2);
    x << std::stod(row[0]), std::stod(row[1]);
    int nearest = 0;
    double best = (x - spec.means.row(0)).squaredNorm();
    for (int c = 1; c < spec.components(); ++c) {
      const double d = (x - spec.means.row(c)).squaredNorm();
      if (d < best) {
        best = d;
        nearest = c;
      }
    }
    out.rows.push_back({row[0], row[1], std::to_string(nearest)});
  }
  write_csv(out_csv, out);
}

}  // namespace aggan
