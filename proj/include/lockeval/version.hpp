#ifndef LOCKEVAL_VERSION_HPP
#define LOCKEVAL_VERSION_HPP

#include <string_view>

namespace lockeval {

inline constexpr std::string_view kVersion = "0.1.0";

}  // namespace lockeval

#endif
