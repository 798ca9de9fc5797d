#pragma once

#include <array>
#include <string_view>

#include "aggan/types.hpp"

namespace aggan {

/// The three generator mutation objectives. Wire names are the exact
/// lowercase strings used in CSVs and configs.
enum class MutationObjective { Minimax, NonSaturating, LeastSquares };

inline constexpr std::array<MutationObjective, 3> kAllObjectives = {
    MutationObjective::Minimax, MutationObjective::NonSaturating,
    MutationObjective::LeastSquares};

std::string_view objective_name(MutationObjective obj);
MutationObjective objective_from_name(std::string_view name);

struct DiscLoss {
  double loss;
  Vector d_real_grad;  // partial of loss w.r.t. each real score
  Vector d_fake_grad;  // partial of loss w.r.t. each fake score
};

struct GenLoss {
  double loss;
  Vector d_fake_grad;
};

/// Cross-entropy discriminator objective
///   -mean(log d_real) - mean(log(1 - d_fake)).
/// Scores must lie in (0, 1); the forward clamp guarantees that.
DiscLoss disc_loss(const Vector& d_real, const Vector& d_fake);

/// Generator objective under one mutation. All three are minimized and all
/// three decrease as the discriminator scores the fakes more real:
///   minimax        mean(log(1 - d))
///   nonsaturating  -mean(log d)
///   leastsquares   mean((d - 1)^2)
GenLoss gen_loss(MutationObjective obj, const Vector& d_fake);

/// Offspring fitness: quality is the mean discriminator score on fakes,
/// diversity is -log of the discriminator gradient norm, combined
/// F = F_q + gamma_f * F_d. Higher is fitter; the theory side minimizes
/// f = -F.
struct FitnessScore {
  double quality = 0.0;
  double diversity = 0.0;
  double gamma = 0.0;
  double combined = 0.0;
};

FitnessScore fitness(const Vector& d_fake, double disc_grad_norm,
                     double gamma_f);

}  // namespace aggan
