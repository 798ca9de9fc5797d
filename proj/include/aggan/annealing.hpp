#pragma once

#include "aggan/rng.hpp"

namespace aggan {

/// Geometric cooling schedule. The current temperature is maintained in
/// closed form, T = max(T_min, T_init * alpha^n), so the schedule invariant
/// holds exactly regardless of how many steps have been taken.
struct AnnealState {
  double t_init = 1000.0;
  double alpha = 0.999;
  double t_min = 1e-8;
  long iteration = 0;
  double t_current = 1000.0;

  static AnnealState make(double t_init, double alpha, double t_min = 1e-8);
};

/// Advances the schedule by one iteration: T <- alpha * T, floored at t_min.
AnnealState cool(const AnnealState& state);

/// Metropolis acceptance probability for a challenger against the incumbent,
/// with fitness maximized: Delta = max(0, f_parent - f_challenger) and
/// P = exp(-Delta / T). Challengers at least as fit are accepted surely.
double metropolis_probability(double f_parent, double f_challenger, double t);

struct MetropolisDecision {
  double delta = 0.0;
  double prob = 1.0;
  double draw = 0.0;  // uniform in [0, 1)
  bool accepted = true;
};

/// Draws gamma uniform in [0, 1); accepts iff gamma < prob. The caller fills
/// in delta for its logs.
MetropolisDecision accept(double prob, Rng& rng);

}  // namespace aggan
