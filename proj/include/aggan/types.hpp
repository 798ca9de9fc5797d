#pragma once

#include <Eigen/Dense>

namespace aggan {

// All numerics run in 64-bit doubles so that seeded runs reproduce exactly.
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

}  // namespace aggan
