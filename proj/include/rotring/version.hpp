#pragma once

namespace rotring {

inline constexpr const char* kVersion = "rotring 1.0.0";

}  // namespace rotring
