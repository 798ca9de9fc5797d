#include "aggan/theory.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "aggan/annealing.hpp"
#include "aggan/csv.hpp"
#include "aggan/error.hpp"

namespace aggan {

void Landscape::validate() const {
  const int n = size();
  if (n < 2) throw ArgumentError("landscape needs at least two states");
  if (static_cast<int>(neighbors.size()) != n)
    throw ArgumentError("landscape: neighbor table size mismatch");
  for (int s = 0; s < n; ++s) {
    if (neighbors[s].empty())
      throw ArgumentError("landscape: state " + std::to_string(s) +
                          " has no neighbors");
    for (int t : neighbors[s]) {
      if (t < 0 || t >= n)
        throw ArgumentError("landscape: neighbor index out of range");
      if (std::find(neighbors[t].begin(), neighbors[t].end(), s) ==
          neighbors[t].end())
        throw ArgumentError("landscape: neighbor relation not symmetric at " +
                            std::to_string(s) + "->" + std::to_string(t));
    }
    if (!std::isfinite(f[s]))
      throw ArgumentError("landscape: non-finite objective value");
  }
  // Connectivity scan; every optimum must be accessible from every start.
  std::vector<char> seen(n, 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    const int s = stack.back();
    stack.pop_back();
    for (int t : neighbors[s])
      if (!seen[t]) {
        seen[t] = 1;
        ++count;
        stack.push_back(t);
      }
  }
  if (count != n) throw ArgumentError("landscape: neighbor graph disconnected");
}

std::vector<int> Landscape::global_minima() const {
  const double best = *std::min_element(f.begin(), f.end());
  std::vector<int> out;
  for (int s = 0; s < size(); ++s)
    if (f[s] == best) out.push_back(s);
  return out;
}

namespace {

std::vector<std::vector<int>> ring_edges(int n) {
  std::vector<std::vector<int>> nb(n);
  for (int s = 0; s < n; ++s) {
    nb[s].push_back((s + 1) % n);
    nb[s].push_back((s + n - 1) % n);
  }
  if (n == 2) {  // collapse the duplicate edge
    nb[0] = {1};
    nb[1] = {0};
  }
  return nb;
}

void add_edge(std::vector<std::vector<int>>& nb, int a, int b) {
  if (a == b) return;
  if (std::find(nb[a].begin(), nb[a].end(), b) != nb[a].end()) return;
  nb[a].push_back(b);
  nb[b].push_back(a);
}

}  // namespace

Landscape make_ring_landscape(std::vector<double> f) {
  Landscape land;
  land.neighbors = ring_edges(static_cast<int>(f.size()));
  land.f = std::move(f);
  land.validate();
  return land;
}

Landscape make_rugged_landscape(int states, int chords, std::uint64_t seed) {
  Rng rng(derive_seed(seed, "landscape.rugged"));
  Landscape land;
  land.neighbors = ring_edges(states);
  land.f.resize(states);
  for (int s = 0; s < states; ++s) land.f[s] = rng.uniform01();
  for (int c = 0; c < chords; ++c)
    add_edge(land.neighbors, static_cast<int>(rng.uniform_int(states)),
             static_cast<int>(rng.uniform_int(states)));
  land.validate();
  return land;
}

Landscape make_trap_landscape(int states, std::uint64_t seed) {
  Rng rng(derive_seed(seed, "landscape.trap"));
  Landscape land;
  land.neighbors = ring_edges(states);
  land.f.resize(states);
  // Wide shallow basin in the front 60% of the ring, narrow deep basin with
  // the global minimum in the remainder; jitter keeps plateaus away.
  const int local = states / 3;
  const int global = (states * 5) / 6;
  for (int s = 0; s < states; ++s) {
    const int d_local = std::min(std::abs(s - local),
                                 states - std::abs(s - local));
    const int d_global = std::min(std::abs(s - global),
                                  states - std::abs(s - global));
    const double wide = 0.2 + 0.8 * static_cast<double>(d_local) / states;
    const double narrow =
        0.05 + 2.5 * static_cast<double>(d_global) / states;
    land.f[s] = std::min(wide, narrow) + 0.02 * rng.uniform01();
  }
  land.f[global] = 0.0;  // unique global minimum
  land.validate();
  return land;
}

Landscape make_random_landscape(std::uint64_t seed) {
  Rng rng(derive_seed(seed, "landscape.random"));
  const int states = 4 + static_cast<int>(rng.uniform_int(29));
  const int chords = static_cast<int>(rng.uniform_int(states));
  Landscape land;
  land.neighbors = ring_edges(states);
  land.f.resize(states);
  for (int s = 0; s < states; ++s) land.f[s] = rng.uniform01();
  for (int c = 0; c < chords; ++c)
    add_edge(land.neighbors, static_cast<int>(rng.uniform_int(states)),
             static_cast<int>(rng.uniform_int(states)));
  land.validate();
  return land;
}

void save_landscape(const std::string& path, const Landscape& land) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << "state,f,neighbors\n";
  for (int s = 0; s < land.size(); ++s) {
    out << s << ',' << fmt_full(land.f[s]) << ',';
    for (std::size_t i = 0; i < land.neighbors[s].size(); ++i)
      out << (i ? ";" : "") << land.neighbors[s][i];
    out << '\n';
  }
}

Landscape load_landscape(const std::string& path) {
  CsvTable table = read_csv(path);
  if (table.header != std::vector<std::string>{"state", "f", "neighbors"})
    throw IoError("'" + path + "' is not a landscape file");
  Landscape land;
  land.f.resize(table.rows.size());
  land.neighbors.resize(table.rows.size());
  for (const auto& row : table.rows) {
    const int s = std::stoi(row[0]);
    if (s < 0 || s >= static_cast<int>(table.rows.size()))
      throw IoError("'" + path + "': state index out of range");
    land.f[s] = std::stod(row[1]);
    std::istringstream is(row[2]);
    std::string tok;
    while (std::getline(is, tok, ';'))
      if (!tok.empty()) land.neighbors[s].push_back(std::stoi(tok));
  }
  land.validate();
  return land;
}

int f_gen(const ChainState& chain, const Landscape& land,
          const ChainConfig& cfg, Rng& rng) {
  const int parent = cfg.parent == ParentRule::Current ? chain.g : chain.g_b;
  const auto& nb = land.neighbors[parent];
  int best = -1;
  for (int c = 0; c < cfg.n_m; ++c) {
    const int cand = nb[rng.uniform_int(static_cast<std::int64_t>(nb.size()))];
    if (best < 0 || land.f[cand] < land.f[best] ||
        (land.f[cand] == land.f[best] && cand < best))
      best = cand;
  }
  return best;
}

ChainState f_upd(const ChainState& chain, const Landscape& land, int child,
                 double t, bool greedy, Rng& rng, StepRecord* record) {
  ChainState next = chain;
  next.iteration = chain.iteration + 1;

  StepRecord rec;
  rec.child = child;
  rec.temperature = t;
  if (land.f[child] <= land.f[chain.g]) {
    rec.accepted = true;
    rec.prob = 1.0;
  } else if (greedy) {
    rec.accepted = false;
    rec.prob = 0.0;
  } else {
    // theory minimizes f; the annealing module maximizes fitness F = -f
    rec.prob = metropolis_probability(-land.f[chain.g], -land.f[child], t);
    const MetropolisDecision d = accept(rec.prob, rng);
    rec.draw = d.draw;
    rec.drew = true;
    rec.accepted = d.accepted;
  }
  if (rec.accepted) next.g = child;
  if (land.f[child] < land.f[chain.g_b]) next.g_b = child;
  if (record) *record = rec;
  return next;
}

Trajectory run_chain(const Landscape& land, const ChainConfig& cfg) {
  land.validate();
  if (cfg.n_m < 1) throw ArgumentError("chain: n_m must be >= 1");
  Rng rng(derive_seed(cfg.seed, "theory.chain"));
  ChainState state;
  state.g = cfg.start >= 0 ? cfg.start
                           : static_cast<int>(rng.uniform_int(land.size()));
  state.g_b = state.g;

  Trajectory traj;
  traj.states.reserve(cfg.budget + 1);
  traj.steps.reserve(cfg.budget);
  traj.states.push_back(state);

  AnnealState anneal = AnnealState::make(cfg.t_init, cfg.alpha, cfg.t_min);
  for (long i = 0; i < cfg.budget; ++i) {
    const int child = f_gen(state, land, cfg, rng);
    StepRecord rec;
    state = f_upd(state, land, child, anneal.t_current, cfg.greedy, rng, &rec);
    anneal = cool(anneal);
    traj.states.push_back(state);
    traj.steps.push_back(rec);
  }
  return traj;
}

MonotoneCheck check_monotone(const Trajectory& traj, const Landscape& land) {
  MonotoneCheck out;
  if (traj.states.empty())
    throw ArgumentError("check_monotone: empty trajectory");
  for (std::size_t i = 1; i < traj.states.size(); ++i) {
    if (land.f[traj.states[i].g_b] > land.f[traj.states[i - 1].g_b]) {
      out.ok = false;
      out.first_violation = static_cast<long>(i);
      return out;
    }
  }
  return out;
}

namespace {

using KernelCounts = std::map<long, std::map<long, long>>;

long encode_pair(const ChainState& s, int n) { return static_cast<long>(s.g) * n + s.g_b; }

double tv_distance(const std::map<long, long>& a, long total_a,
                   const std::map<long, long>& b, long total_b) {
  std::set<long> keys;
  for (const auto& [k, v] : a) keys.insert(k);
  for (const auto& [k, v] : b) keys.insert(k);
  double tv = 0.0;
  for (long k : keys) {
    const auto ia = a.find(k);
    const auto ib = b.find(k);
    const double pa =
        ia == a.end() ? 0.0 : static_cast<double>(ia->second) / total_a;
    const double pb =
        ib == b.end() ? 0.0 : static_cast<double>(ib->second) / total_b;
    tv += std::abs(pa - pb);
  }
  return 0.5 * tv;
}

}  // namespace

HomogeneityResult check_homogeneity(const Landscape& land,
                                    const ChainConfig& cfg, Window a, Window b,
                                    long restarts, long min_samples) {
  land.validate();
  if (a.length <= 0 || b.length <= 0)
    throw ArgumentError("check_homogeneity: windows must be non-empty");
  const long horizon = std::max(a.start + a.length, b.start + b.length);
  const int n = land.size();

  KernelCounts counts_a, counts_b;
  HomogeneityResult out;
  for (long r = 0; r < restarts; ++r) {
    ChainConfig run_cfg = cfg;
    run_cfg.budget = horizon;
    run_cfg.seed = derive_seed(cfg.seed, "theory.homogeneity", r);
    const Trajectory traj = run_chain(land, run_cfg);
    for (long i = 0; i < horizon; ++i) {
      const long from = encode_pair(traj.states[i], n);
      const long to = encode_pair(traj.states[i + 1], n);
      if (i >= a.start && i < a.start + a.length) {
        ++counts_a[from][to];
        ++out.samples_a;
      }
      if (i >= b.start && i < b.start + b.length) {
        ++counts_b[from][to];
        ++out.samples_b;
      }
    }
  }

  std::set<long> sources;
  for (const auto& [k, v] : counts_a) sources.insert(k);
  for (const auto& [k, v] : counts_b) sources.insert(k);
  for (long s : sources) {
    const auto ia = counts_a.find(s);
    const auto ib = counts_b.find(s);
    long total_a = 0, total_b = 0;
    if (ia != counts_a.end())
      for (const auto& [k, v] : ia->second) total_a += v;
    if (ib != counts_b.end())
      for (const auto& [k, v] : ib->second) total_b += v;
    if (total_a < min_samples || total_b < min_samples) {
      out.excluded_states.push_back(s);
      continue;
    }
    ++out.states_compared;
    out.max_tv = std::max(
        out.max_tv, tv_distance(ia->second, total_a, ib->second, total_b));
  }
  return out;
}

HitEstimate estimate_hit_probability(const Landscape& land,
                                     const ChainConfig& cfg, long n_runs) {
  const std::vector<int> minima = land.global_minima();
  HitEstimate est;
  est.runs = n_runs;
  for (long r = 0; r < n_runs; ++r) {
    ChainConfig run_cfg = cfg;
    run_cfg.seed = derive_seed(cfg.seed, "theory.hit", r);
    const Trajectory traj = run_chain(land, run_cfg);
    const int gb = traj.states.back().g_b;
    if (std::find(minima.begin(), minima.end(), gb) != minima.end())
      ++est.hits;
  }
  est.fraction = n_runs ? static_cast<double>(est.hits) / n_runs : 0.0;
  est.std_error =
      n_runs ? std::sqrt(est.fraction * (1.0 - est.fraction) / n_runs) : 0.0;
  return est;
}

}  // namespace aggan
