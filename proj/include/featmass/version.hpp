#pragma once

namespace featmass {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace featmass
