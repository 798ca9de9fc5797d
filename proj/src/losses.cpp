#include "aggan/losses.hpp"

#include <cmath>
#include <string>

#include "aggan/error.hpp"

namespace aggan {

std::string_view objective_name(MutationObjective obj) {
  switch (obj) {
    case MutationObjective::Minimax:
      return "minimax";
    case MutationObjective::NonSaturating:
      return "nonsaturating";
    case MutationObjective::LeastSquares:
      return "leastsquares";
  }
  return "?";
}

MutationObjective objective_from_name(std::string_view name) {
  for (MutationObjective obj : kAllObjectives)
    if (objective_name(obj) == name) return obj;
  throw ArgumentError("unknown objective '" + std::string(name) + "'");
}

DiscLoss disc_loss(const Vector& d_real, const Vector& d_fake) {
  if (d_real.size() == 0 || d_fake.size() == 0)
    throw ArgumentError("disc_loss: empty batch");
  const double nr = static_cast<double>(d_real.size());
  const double nf = static_cast<double>(d_fake.size());
  DiscLoss out;
  out.loss = -d_real.array().log().mean() -
             (1.0 - d_fake.array()).log().mean();
  out.d_real_grad = (-1.0 / (nr * d_real.array())).matrix();
  out.d_fake_grad = (1.0 / (nf * (1.0 - d_fake.array()))).matrix();
  return out;
}

GenLoss gen_loss(MutationObjective obj, const Vector& d_fake) {
  if (d_fake.size() == 0) throw ArgumentError("gen_loss: empty batch");
  const double n = static_cast<double>(d_fake.size());
  GenLoss out;
  switch (obj) {
    case MutationObjective::Minimax:
      out.loss = (1.0 - d_fake.array()).log().mean();
      out.d_fake_grad = (-1.0 / (n * (1.0 - d_fake.array()))).matrix();
      break;
    case MutationObjective::NonSaturating:
      out.loss = -d_fake.array().log().mean();
      out.d_fake_grad = (-1.0 / (n * d_fake.array())).matrix();
      break;
    case MutationObjective::LeastSquares:
      out.loss = (d_fake.array() - 1.0).square().mean();
      out.d_fake_grad = (2.0 * (d_fake.array() - 1.0) / n).matrix();
      break;
  }
  return out;
}

FitnessScore fitness(const Vector& d_fake, double disc_grad_norm,
                     double gamma_f) {
  if (disc_grad_norm < 0.0)
    throw ArgumentError("fitness: gradient norm must be non-negative");
  FitnessScore score;
  score.quality = d_fake.size() ? d_fake.mean() : 0.0;
  score.diversity = -std::log(std::max(disc_grad_norm, 1e-12));
  score.gamma = gamma_f;
  score.combined = score.quality + gamma_f * score.diversity;
  return score;
}

}  // namespace aggan
