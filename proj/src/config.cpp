#include "aggan/config.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "aggan/csv.hpp"
#include "aggan/error.hpp"

namespace aggan {

std::string_view kind_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Train:
      return "train";
    case ExperimentKind::Bench:
      return "bench";
    case ExperimentKind::Theory:
      return "theory";
    case ExperimentKind::Sweep:
      return "sweep";
  }
  return "?";
}

std::string_view method_name(BenchMethod method) {
  switch (method) {
    case BenchMethod::Cn:
      return "cn";
    case BenchMethod::OsCn:
      return "os_cn";
    case BenchMethod::FixedGan:
      return "fixed_gan";
    case BenchMethod::Egan:
      return "egan";
    case BenchMethod::Aggan:
      return "aggan";
  }
  return "?";
}

BenchMethod method_from_name(std::string_view name) {
  if (name == "cn") return BenchMethod::Cn;
  if (name == "os_cn") return BenchMethod::OsCn;
  if (name == "fixed_gan") return BenchMethod::FixedGan;
  if (name == "egan") return BenchMethod::Egan;
  if (name == "aggan") return BenchMethod::Aggan;
  throw ConfigError("unknown bench method '" + std::string(name) + "'");
}

TrainerConfig materialize_trainer(const TrainerSettings& s, Index data_dim,
                                  std::uint64_t seed) {
  TrainerConfig cfg;
  cfg.mode = s.mode;
  if (s.mode == TrainMode::Fixed)
    cfg.objectives = {s.objective};
  else
    cfg.objectives.assign(kAllObjectives.begin(), kAllObjectives.end());
  cfg.offspring_steps = s.steps;
  cfg.batch_size = s.batch;
  cfg.latent_dim = s.latent;
  cfg.t_init = s.t_init;
  cfg.alpha = s.alpha;
  cfg.gamma_f = s.gamma_f;
  cfg.g_opt = s.g_opt;
  cfg.d_opt = s.d_opt;
  cfg.d_steps = s.d_steps;
  cfg.iterations = s.iters;
  cfg.seed = seed;
  cfg.sample_every = s.sample_every;

  std::vector<Index> g_widths = {s.latent};
  g_widths.insert(g_widths.end(), s.g_hidden.begin(), s.g_hidden.end());
  g_widths.push_back(data_dim);
  cfg.g_spec = MLPSpec::dense(g_widths, s.g_act, Output::Identity);

  std::vector<Index> d_widths = {data_dim};
  d_widths.insert(d_widths.end(), s.d_hidden.begin(), s.d_hidden.end());
  d_widths.push_back(1);
  cfg.d_spec = MLPSpec::dense(d_widths, s.d_act, Output::Sigmoid);
  return cfg;
}

namespace {

struct Entry {
  std::string section;
  std::string key;
  std::string value;
  int line;
};

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  std::size_t b = s.find_last_not_of(" \t\r");
  if (a == std::string::npos) return "";
  return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(const Entry& e, const std::string& msg) {
  throw ConfigError("line " + std::to_string(e.line) + ": " + msg);
}

double to_double(const Entry& e) {
  try {
    std::size_t used;
    const double v = std::stod(e.value, &used);
    if (used != e.value.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    fail(e, "key '" + e.key + "' expects a number, got '" + e.value + "'");
  }
}

long to_long(const Entry& e) {
  try {
    std::size_t used;
    const long v = std::stol(e.value, &used);
    if (used != e.value.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    fail(e, "key '" + e.key + "' expects an integer, got '" + e.value + "'");
  }
}

bool to_bool(const Entry& e) {
  if (e.value == "true") return true;
  if (e.value == "false") return false;
  fail(e, "key '" + e.key + "' expects true or false, got '" + e.value + "'");
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : v) {
    if (c == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(trim(cur));
  return out;
}

std::vector<double> to_double_list(const Entry& e) {
  std::vector<double> out;
  for (const std::string& tok : split_list(e.value)) {
    Entry sub = e;
    sub.value = tok;
    out.push_back(to_double(sub));
  }
  return out;
}

std::vector<Index> to_index_list(const Entry& e) {
  std::vector<Index> out;
  for (const std::string& tok : split_list(e.value)) {
    Entry sub = e;
    sub.value = tok;
    out.push_back(to_long(sub));
  }
  return out;
}

Hidden to_hidden(const Entry& e) {
  if (e.value == "relu") return Hidden::Relu;
  if (e.value == "leaky") return Hidden::LeakyRelu;
  if (e.value == "tanh") return Hidden::Tanh;
  fail(e, "key '" + e.key + "' expects relu|leaky|tanh, got '" + e.value + "'");
}

OptKind to_opt(const Entry& e) {
  if (e.value == "adam") return OptKind::Adam;
  if (e.value == "sgd") return OptKind::Sgd;
  fail(e, "key '" + e.key + "' expects adam|sgd, got '" + e.value + "'");
}

void apply_top(ExperimentConfig& cfg, const Entry& e) {
  if (e.key == "kind") {
    if (e.value == "train") cfg.kind = ExperimentKind::Train;
    else if (e.value == "bench") cfg.kind = ExperimentKind::Bench;
    else if (e.value == "theory") cfg.kind = ExperimentKind::Theory;
    else if (e.value == "sweep") cfg.kind = ExperimentKind::Sweep;
    else fail(e, "unknown kind '" + e.value + "'");
  } else if (e.key == "seeds") {
    // A bare integer is a count (seeds 0..n-1); a comma list names the
    // seeds. A trailing comma forces list form for a single value.
    cfg.seeds.clear();
    if (e.value.find(',') == std::string::npos) {
      const long n = to_long(e);
      if (n < 1) fail(e, "seeds count must be >= 1");
      for (long s = 0; s < n; ++s) cfg.seeds.push_back(s);
    } else {
      for (const std::string& tok : split_list(e.value)) {
        if (tok.empty()) continue;
        Entry sub = e;
        sub.value = tok;
        cfg.seeds.push_back(static_cast<std::uint64_t>(to_long(sub)));
      }
      if (cfg.seeds.empty()) fail(e, "seeds list is empty");
    }
  } else if (e.key == "out") {
    cfg.out = e.value;
  } else {
    fail(e, "unknown key '" + e.key + "' at top level");
  }
}

void apply_dataset(DatasetConfig& d, const Entry& e) {
  if (e.key == "type") {
    if (e.value == "ring") d.type = DatasetType::Ring;
    else if (e.value == "grid") d.type = DatasetType::Grid;
    else if (e.value == "two_rings") d.type = DatasetType::TwoRings;
    else if (e.value == "csv") d.type = DatasetType::Csv;
    else fail(e, "unknown dataset type '" + e.value + "'");
  } else if (e.key == "k") d.k = static_cast<int>(to_long(e));
  else if (e.key == "radius") d.radius = to_double(e);
  else if (e.key == "sigma") d.sigma = to_double(e);
  else if (e.key == "n_per_mode") d.n_per_mode = to_long(e);
  else if (e.key == "n_per_class") d.n_per_class = to_long(e);
  else if (e.key == "side") d.side = static_cast<int>(to_long(e));
  else if (e.key == "spacing") d.spacing = to_double(e);
  else if (e.key == "path") d.path = e.value;
  else if (e.key == "positive") d.positive = static_cast<int>(to_long(e));
  else if (e.key == "negative") d.negative = static_cast<int>(to_long(e));
  else if (e.key == "scale") d.scale = to_double(e);
  else if (e.key == "train_class") d.train_class = static_cast<int>(to_long(e));
  else fail(e, "unknown key '" + e.key + "' in section [dataset]");
}

void apply_trainer(TrainerSettings& t, const Entry& e) {
  if (e.key == "mode") {
    try {
      t.mode = mode_from_name(e.value);
    } catch (const ArgumentError& err) {
      fail(e, err.what());
    }
  } else if (e.key == "objective") {
    try {
      t.objective = objective_from_name(e.value);
    } catch (const ArgumentError& err) {
      fail(e, err.what());
    }
  } else if (e.key == "iters") t.iters = to_long(e);
  else if (e.key == "batch") t.batch = to_long(e);
  else if (e.key == "latent") t.latent = to_long(e);
  else if (e.key == "steps") t.steps = static_cast<int>(to_long(e));
  else if (e.key == "t_init") {
    t.t_init = to_double(e);
    if (t.t_init <= 0.0) fail(e, "t_init must be positive");
  } else if (e.key == "alpha") {
    t.alpha = to_double(e);
    if (t.alpha <= 0.0 || t.alpha > 1.0) fail(e, "alpha must lie in (0,1]");
  } else if (e.key == "gamma_f") {
    t.gamma_f = to_double(e);
    if (t.gamma_f < 0.0) fail(e, "gamma_f must be >= 0");
  } else if (e.key == "g_hidden") t.g_hidden = to_index_list(e);
  else if (e.key == "d_hidden") t.d_hidden = to_index_list(e);
  else if (e.key == "g_act") t.g_act = to_hidden(e);
  else if (e.key == "d_act") t.d_act = to_hidden(e);
  else if (e.key == "g_opt") t.g_opt.kind = to_opt(e);
  else if (e.key == "d_opt") t.d_opt.kind = to_opt(e);
  else if (e.key == "g_lr") t.g_opt.lr = to_double(e);
  else if (e.key == "d_lr") t.d_opt.lr = to_double(e);
  else if (e.key == "d_steps") t.d_steps = static_cast<int>(to_long(e));
  else if (e.key == "sample_every") t.sample_every = to_long(e);
  else fail(e, "unknown key '" + e.key + "' in section [trainer]");
}

void apply_bench(BenchSettings& b, const Entry& e) {
  if (e.key == "ir") {
    b.irs = to_double_list(e);
    for (double ir : b.irs)
      if (ir < 1.0) fail(e, "ir values must be >= 1");
  } else if (e.key == "methods") {
    b.methods.clear();
    for (const std::string& tok : split_list(e.value)) {
      try {
        b.methods.push_back(method_from_name(tok));
      } catch (const ConfigError& err) {
        fail(e, err.what());
      }
    }
  } else if (e.key == "cls_hidden") b.cls_hidden = to_index_list(e);
  else if (e.key == "cls_epochs") b.cls_epochs = static_cast<int>(to_long(e));
  else if (e.key == "cls_batch") b.cls_batch = to_long(e);
  else if (e.key == "cls_lr") b.cls_lr = to_double(e);
  else if (e.key == "coverage_samples") b.coverage_samples = to_long(e);
  else if (e.key == "min_per_mode") b.min_per_mode = to_long(e);
  else fail(e, "unknown key '" + e.key + "' in section [bench]");
}

void apply_sweep(SweepGrid& s, const Entry& e) {
  if (e.key == "t") {
    s.t = to_double_list(e);
    for (double t : s.t)
      if (t <= 0.0) fail(e, "t values must be positive");
  } else if (e.key == "alpha") {
    s.alpha = to_double_list(e);
    for (double a : s.alpha)
      if (a <= 0.0 || a > 1.0) fail(e, "alpha must lie in (0,1]");
  } else {
    fail(e, "unknown key '" + e.key + "' in section [sweep]");
  }
}

void apply_theory(TheorySettings& t, const Entry& e) {
  if (e.key == "landscape") {
    if (e.value != "rugged" && e.value != "ring" && e.value != "trap" &&
        e.value != "file")
      fail(e, "unknown landscape '" + e.value + "'");
    t.landscape = e.value;
  } else if (e.key == "states") t.states = static_cast<int>(to_long(e));
  else if (e.key == "chords") t.chords = static_cast<int>(to_long(e));
  else if (e.key == "landscape_seed")
    t.landscape_seed = static_cast<std::uint64_t>(to_long(e));
  else if (e.key == "file") t.file = e.value;
  else if (e.key == "n_m") t.n_m = static_cast<int>(to_long(e));
  else if (e.key == "t_init") {
    t.t_init = to_double(e);
    if (t.t_init <= 0.0) fail(e, "t_init must be positive");
  } else if (e.key == "alpha") {
    t.alpha = to_double(e);
    if (t.alpha <= 0.0 || t.alpha > 1.0) fail(e, "alpha must lie in (0,1]");
  } else if (e.key == "t_min") t.t_min = to_double(e);
  else if (e.key == "parent") {
    if (e.value == "current") t.parent = ParentRule::Current;
    else if (e.value == "elite") t.parent = ParentRule::Elite;
    else fail(e, "key 'parent' expects current|elite");
  } else if (e.key == "greedy") t.greedy = to_bool(e);
  else if (e.key == "budget") t.budget = to_long(e);
  else if (e.key == "runs") t.runs = to_long(e);
  else fail(e, "unknown key '" + e.key + "' in section [theory]");
}

void validate_config(const ExperimentConfig& cfg, const std::string& origin) {
  if (cfg.seeds.empty()) throw ConfigError(origin + ": seeds must be non-empty");
  if (cfg.kind == ExperimentKind::Sweep &&
      (cfg.sweep.t.empty() || cfg.sweep.alpha.empty()))
    throw ConfigError(origin + ": sweep grid must be non-empty");
  if (cfg.kind == ExperimentKind::Bench) {
    if (cfg.bench.irs.empty() || cfg.bench.methods.empty())
      throw ConfigError(origin + ": bench needs ir and methods lists");
  }
  if (cfg.dataset.type == DatasetType::Csv) {
    if (cfg.dataset.path.empty())
      throw ConfigError(origin + ": dataset type csv requires 'path'");
    if (!std::filesystem::exists(cfg.dataset.path))
      throw ConfigError(origin + ": dataset file '" + cfg.dataset.path +
                        "' does not exist");
  }
  if (cfg.theory.landscape == "file") {
    if (cfg.theory.file.empty())
      throw ConfigError(origin + ": landscape file requires 'file'");
    if (cfg.kind == ExperimentKind::Theory &&
        !std::filesystem::exists(cfg.theory.file))
      throw ConfigError(origin + ": landscape file '" + cfg.theory.file +
                        "' does not exist");
  }
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text,
                                   const std::string& origin) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("line " + std::to_string(line_no) +
                          ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "dataset" && section != "trainer" && section != "bench" &&
          section != "sweep" && section != "theory")
        throw ConfigError("line " + std::to_string(line_no) +
                          ": unknown section [" + section + "]");
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no) +
                        ": expected key = value");
    Entry e{section, trim(line.substr(0, eq)), trim(line.substr(eq + 1)),
            line_no};
    if (e.key.empty())
      throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    if (section.empty()) apply_top(cfg, e);
    else if (section == "dataset") apply_dataset(cfg.dataset, e);
    else if (section == "trainer") apply_trainer(cfg.trainer, e);
    else if (section == "bench") apply_bench(cfg.bench, e);
    else if (section == "sweep") apply_sweep(cfg.sweep, e);
    else apply_theory(cfg.theory, e);
  }
  validate_config(cfg, origin);
  return cfg;
}

ExperimentConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

namespace {

std::string join_doubles(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out += (i ? "," : "") + fmt_g(v[i], 17);
  return out;
}

std::string join_indices(const std::vector<Index>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

std::string_view dataset_type_name(DatasetType t) {
  switch (t) {
    case DatasetType::Ring:
      return "ring";
    case DatasetType::Grid:
      return "grid";
    case DatasetType::TwoRings:
      return "two_rings";
    case DatasetType::Csv:
      return "csv";
  }
  return "?";
}

std::string_view hidden_token(Hidden h) {
  switch (h) {
    case Hidden::Relu:
      return "relu";
    case Hidden::LeakyRelu:
      return "leaky";
    case Hidden::Tanh:
      return "tanh";
  }
  return "?";
}

}  // namespace

std::string serialize_config(const ExperimentConfig& cfg) {
  std::ostringstream os;
  os << "kind = " << kind_name(cfg.kind) << '\n';
  bool contiguous = true;
  for (std::size_t i = 0; i < cfg.seeds.size(); ++i)
    if (cfg.seeds[i] != i) contiguous = false;
  if (contiguous) {
    os << "seeds = " << cfg.seeds.size() << '\n';
  } else {
    os << "seeds = ";
    for (std::size_t i = 0; i < cfg.seeds.size(); ++i)
      os << (i ? "," : "") << cfg.seeds[i];
    if (cfg.seeds.size() == 1) os << ',';
    os << '\n';
  }
  os << "out = " << cfg.out << "\n\n";

  const DatasetConfig& d = cfg.dataset;
  os << "[dataset]\n";
  os << "type = " << dataset_type_name(d.type) << '\n';
  os << "k = " << d.k << '\n';
  os << "radius = " << fmt_g(d.radius, 17) << '\n';
  os << "sigma = " << fmt_g(d.sigma, 17) << '\n';
  os << "n_per_mode = " << d.n_per_mode << '\n';
  os << "n_per_class = " << d.n_per_class << '\n';
  os << "side = " << d.side << '\n';
  os << "spacing = " << fmt_g(d.spacing, 17) << '\n';
  if (!d.path.empty()) os << "path = " << d.path << '\n';
  os << "positive = " << d.positive << '\n';
  os << "negative = " << d.negative << '\n';
  os << "scale = " << fmt_g(d.scale, 17) << '\n';
  os << "train_class = " << d.train_class << '\n';
  os << '\n';

  const TrainerSettings& t = cfg.trainer;
  os << "[trainer]\n";
  os << "mode = " << mode_name(t.mode) << '\n';
  os << "objective = " << objective_name(t.objective) << '\n';
  os << "iters = " << t.iters << '\n';
  os << "batch = " << t.batch << '\n';
  os << "latent = " << t.latent << '\n';
  os << "steps = " << t.steps << '\n';
  os << "t_init = " << fmt_g(t.t_init, 17) << '\n';
  os << "alpha = " << fmt_g(t.alpha, 17) << '\n';
  os << "gamma_f = " << fmt_g(t.gamma_f, 17) << '\n';
  os << "g_hidden = " << join_indices(t.g_hidden) << '\n';
  os << "d_hidden = " << join_indices(t.d_hidden) << '\n';
  os << "g_act = " << hidden_token(t.g_act) << '\n';
  os << "d_act = " << hidden_token(t.d_act) << '\n';
  os << "g_opt = " << (t.g_opt.kind == OptKind::Adam ? "adam" : "sgd") << '\n';
  os << "d_opt = " << (t.d_opt.kind == OptKind::Adam ? "adam" : "sgd") << '\n';
  os << "g_lr = " << fmt_g(t.g_opt.lr, 17) << '\n';
  os << "d_lr = " << fmt_g(t.d_opt.lr, 17) << '\n';
  os << "d_steps = " << t.d_steps << '\n';
  os << "sample_every = " << t.sample_every << '\n';
  os << '\n';

  const BenchSettings& b = cfg.bench;
  os << "[bench]\n";
  os << "ir = " << join_doubles(b.irs) << '\n';
  os << "methods = ";
  for (std::size_t i = 0; i < b.methods.size(); ++i)
    os << (i ? "," : "") << method_name(b.methods[i]);
  os << '\n';
  os << "cls_hidden = " << join_indices(b.cls_hidden) << '\n';
  os << "cls_epochs = " << b.cls_epochs << '\n';
  os << "cls_batch = " << b.cls_batch << '\n';
  os << "cls_lr = " << fmt_g(b.cls_lr, 17) << '\n';
  os << "coverage_samples = " << b.coverage_samples << '\n';
  os << "min_per_mode = " << b.min_per_mode << '\n';
  os << '\n';

  os << "[sweep]\n";
  os << "t = " << join_doubles(cfg.sweep.t) << '\n';
  os << "alpha = " << join_doubles(cfg.sweep.alpha) << '\n';
  os << '\n';

  const TheorySettings& th = cfg.theory;
  os << "[theory]\n";
  os << "landscape = " << th.landscape << '\n';
  os << "states = " << th.states << '\n';
  os << "chords = " << th.chords << '\n';
  os << "landscape_seed = " << th.landscape_seed << '\n';
  if (!th.file.empty()) os << "file = " << th.file << '\n';
  os << "n_m = " << th.n_m << '\n';
  os << "t_init = " << fmt_g(th.t_init, 17) << '\n';
  os << "alpha = " << fmt_g(th.alpha, 17) << '\n';
  os << "t_min = " << fmt_g(th.t_min, 17) << '\n';
  os << "parent = " << (th.parent == ParentRule::Current ? "current" : "elite")
     << '\n';
  os << "greedy = " << (th.greedy ? "true" : "false") << '\n';
  os << "budget = " << th.budget << '\n';
  os << "runs = " << th.runs << '\n';
  return os.str();
}

}  // namespace aggan
