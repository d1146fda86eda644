#ifndef NCLASS_VERSION_HPP
#define NCLASS_VERSION_HPP

namespace nclass {
inline constexpr const char* k_version = "0.1.0";
}

#endif
