#pragma once

namespace pobs {

inline constexpr const char* version = "0.1.0";

} // namespace pobs
