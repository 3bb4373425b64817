#pragma once

namespace procyc {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace procyc
