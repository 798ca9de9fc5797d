#pragma once

#include <cstdint>
#include <map>

#include "aggan/data.hpp"
#include "aggan/net.hpp"

namespace aggan {

/// Exactly n_needed synthetic feature rows via G(z), z ~ N(0,1).
Matrix generate_minority(const MLPSpec& g_spec, const ParamSet& g,
                         Index n_needed, std::uint64_t seed);

/// Appends generator samples labeled `minority_class` until that class
/// reaches the majority count. The result is balanced by construction.
Dataset oversample_with_generator(const Dataset& train, const MLPSpec& g_spec,
                                  const ParamSet& g, int minority_class,
                                  std::uint64_t seed);

/// Classic random oversampling: replicates minority rows (drawn uniformly
/// with replacement) until every class reaches the majority count.
Dataset random_oversample(const Dataset& train, std::uint64_t seed);

/// Multi-class rebalance: one trained generator per deficient class; every
/// class is raised to the majority count.
struct ClassGenerator {
  MLPSpec spec;
  ParamSet params;
};
Dataset multiclass_balance(const Dataset& train,
                           const std::map<int, ClassGenerator>& generators,
                           std::uint64_t seed);

}  // namespace aggan
