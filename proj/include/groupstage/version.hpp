#pragma once

namespace groupstage {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace groupstage
