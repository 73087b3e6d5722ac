#pragma once

namespace coarma {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace coarma
