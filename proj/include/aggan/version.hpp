#pragma once

namespace aggan {

inline constexpr const char* kVersion = "aggan 0.1.0";

}  // namespace aggan
