#pragma once

namespace blocklab {

inline constexpr const char* kToolVersion = "blocklab 1.0.0";

} // namespace blocklab
