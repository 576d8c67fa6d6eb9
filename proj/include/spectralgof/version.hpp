#pragma once

namespace spectralgof {

inline constexpr const char* kVersion = "0.3.0";

} // namespace spectralgof
