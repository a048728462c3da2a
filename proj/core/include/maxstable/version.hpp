#pragma once

namespace maxstable {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace maxstable
