#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace riskbsde::util {

// Shortest round-trip decimal form of a double (std::to_chars).
std::string format_double(double v);

// FNV-1a 64-bit, used for manifest content digests and the config hash.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);

}  // namespace riskbsde::util
