#pragma once

namespace qeclab {

inline constexpr const char* kToolName = "qeclab";
inline constexpr const char* kToolVersion = "0.1.0";

} // namespace qeclab
