#pragma once

namespace tracelab {

inline constexpr const char* TRACELAB_VERSION = "0.1.0";

}  // namespace tracelab
