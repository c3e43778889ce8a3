#ifndef SCF_VERSION_HPP
#define SCF_VERSION_HPP

namespace scf {
inline constexpr const char* kVersion = "0.1.0";
}

#endif  // SCF_VERSION_HPP
