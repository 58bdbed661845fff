#pragma once

namespace modcomp {

inline constexpr const char* kVersion = "0.1.0";

// Serialization format of canonical graph encodings and cache files.
// Bump when the canonical JSON layout changes; stale caches are detected
// by re-canonicalizing each cached line.
inline constexpr int kFormatVersion = 1;

}  // namespace modcomp
