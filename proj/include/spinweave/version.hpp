#pragma once

namespace spinweave {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace spinweave
