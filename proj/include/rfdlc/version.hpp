#pragma once

namespace rfdlc {

inline constexpr const char* kToolName = "rfdlc";
inline constexpr const char* kVersion = "0.1.0";

} // namespace rfdlc
