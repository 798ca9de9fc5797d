#include "aggan/annealing.hpp"

#include <cmath>

#include "aggan/error.hpp"

namespace aggan {

AnnealState AnnealState::make(double t_init, double alpha, double t_min) {
  if (t_init <= 0.0) throw ArgumentError("initial temperature must be positive");
  if (alpha <= 0.0 || alpha > 1.0)
    throw ArgumentError("alpha must lie in (0,1]");
  AnnealState s;
  s.t_init = t_init;
  s.alpha = alpha;
  s.t_min = t_min;
  s.iteration = 0;
  s.t_current = t_init;
  return s;
}

AnnealState cool(const AnnealState& state) {
  AnnealState next = state;
  next.iteration = state.iteration + 1;
  next.t_current = std::max(
      state.t_min,
      state.t_init * std::pow(state.alpha, static_cast<double>(next.iteration)));
  return next;
}

double metropolis_probability(double f_parent, double f_challenger, double t) {
  if (!(t > 0.0)) throw ArgumentError("temperature must be positive");
  if (!std::isfinite(f_parent) || !std::isfinite(f_challenger))
    throw ArgumentError("fitness values must be finite");
  const double delta = std::max(0.0, f_parent - f_challenger);
  return std::exp(-delta / t);
}

MetropolisDecision accept(double prob, Rng& rng) {
  MetropolisDecision d;
  d.prob = prob;
  d.draw = rng.uniform01();
  d.accepted = d.draw < prob;
  return d;
}

}  // namespace aggan
