#pragma once

namespace noma {

inline constexpr const char kVersion[] = "1.0.0";

}
