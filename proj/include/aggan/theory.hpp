#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "aggan/rng.hpp"

namespace aggan {

/// Finite solution space with an objective to minimize and a symmetric
/// neighbor relation. Generators always produce connected graphs; validate()
/// re-checks symmetry, non-emptiness and connectivity on load.
struct Landscape {
  std::vector<double> f;
  std::vector<std::vector<int>> neighbors;

  int size() const { return static_cast<int>(f.size()); }
  void validate() const;

  /// Exhaustive scan for the set of global minima.
  std::vector<int> global_minima() const;
};

Landscape make_ring_landscape(std::vector<double> f);
/// Ring plus `chords` random extra edges; f drawn uniform in [0, 1).
Landscape make_rugged_landscape(int states, int chords, std::uint64_t seed);
/// Double-well ring: a wide shallow basin around a local minimum and a
/// narrower basin holding the global minimum, with jitter elsewhere. Greedy
/// descent from a uniform start gets caught in the wide basin.
Landscape make_trap_landscape(int states, std::uint64_t seed);
/// Uniform random f over a ring with a few chords, for fuzz campaigns.
Landscape make_random_landscape(std::uint64_t seed);

void save_landscape(const std::string& path, const Landscape& land);
Landscape load_landscape(const std::string& path);

/// Chain element: current solution g plus the elite g_b.
struct ChainState {
  int g = 0;
  int g_b = 0;
  long iteration = 0;
};

enum class ParentRule { Current, Elite };

struct ChainConfig {
  int n_m = 3;
  double t_init = 1.0;
  double alpha = 0.999;
  double t_min = 1e-8;
  ParentRule parent = ParentRule::Current;
  bool greedy = false;  // accept only non-worsening moves, no Metropolis
  long budget = 1000;
  std::uint64_t seed = 0;
  int start = -1;  // -1 draws the start state uniformly
};

struct StepRecord {
  int child = 0;
  double temperature = 0.0;
  double prob = 1.0;
  double draw = 0.0;
  bool drew = false;
  bool accepted = true;
};

struct Trajectory {
  std::vector<ChainState> states;  // budget + 1 entries
  std::vector<StepRecord> steps;   // budget entries
};

/// Offspring generation: parent per the choice rule, n_m uniform neighbor
/// draws with replacement, best child by f (ties to the lowest index).
int f_gen(const ChainState& chain, const Landscape& land,
          const ChainConfig& cfg, Rng& rng);

/// Metropolis update plus elite tracking. Non-worsening children are always
/// accepted; worsening ones with probability exp(-(f(child) - f(g)) / T),
/// or never when cfg.greedy. The elite moves only on strict improvement.
ChainState f_upd(const ChainState& chain, const Landscape& land, int child,
                 double t, bool greedy, Rng& rng, StepRecord* record);

Trajectory run_chain(const Landscape& land, const ChainConfig& cfg);

struct MonotoneCheck {
  bool ok = true;
  long first_violation = -1;
};

/// True iff f(g_b) is non-increasing along the trajectory.
MonotoneCheck check_monotone(const Trajectory& traj, const Landscape& land);

struct Window {
  long start = 0;
  long length = 0;
};

struct HomogeneityResult {
  double max_tv = 0.0;                 // over states sampled enough in both windows
  long states_compared = 0;
  std::vector<long> excluded_states;   // encoded (g, g_b) pairs with too few samples
  long samples_a = 0;
  long samples_b = 0;
};

/// Estimates the one-step transition kernel over (g, g_b) pairs inside two
/// iteration windows, from `restarts` independent chains, and returns the
/// largest total-variation distance between the two per-state estimates.
/// States with fewer than `min_samples` transitions in either window are
/// excluded and reported.
HomogeneityResult check_homogeneity(const Landscape& land,
                                    const ChainConfig& cfg, Window a, Window b,
                                    long restarts, long min_samples);

struct HitEstimate {
  long runs = 0;
  long hits = 0;
  double fraction = 0.0;
  double std_error = 0.0;
};

/// Fraction of independent chains whose elite reaches a global minimum
/// within the budget. The optimum set comes from the exhaustive scan.
HitEstimate estimate_hit_probability(const Landscape& land,
                                     const ChainConfig& cfg, long n_runs);

}  // namespace aggan
