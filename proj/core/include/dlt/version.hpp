#pragma once

namespace dlt {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace dlt
