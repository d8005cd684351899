#ifndef OCFSIM_VERSION_HPP
#define OCFSIM_VERSION_HPP

namespace ocfsim {

inline constexpr const char* kVersion = "0.1.0";

}

#endif // OCFSIM_VERSION_HPP
