#pragma once

namespace lipchain {

inline constexpr const char* kToolVersion = "0.1.0";

// Identifies the RNG and seed-derivation scheme (see rng.hpp). Emitted into
// every data output so published numbers stay re-derivable; bump on any
// change to the generation path.
inline constexpr const char* kGeneratorId = "splitmix64-v1";

}  // namespace lipchain
