#pragma once

#include <string>

#include "aggan/net.hpp"

namespace aggan {

/// Textual checkpoint: header `aggan-params v1 <widths> <activations>`, then
/// one line per parameter array (name, shape, row-major values at 17
/// significant digits, i.e. full double round-trip).
void save_params(const std::string& path, const MLPSpec& spec,
                 const ParamSet& params);

/// Loads a checkpoint and validates every shape against `spec`.
ParamSet load_params(const std::string& path, const MLPSpec& spec);

std::string spec_header(const MLPSpec& spec);
MLPSpec spec_from_header(const std::string& header);

}  // namespace aggan
