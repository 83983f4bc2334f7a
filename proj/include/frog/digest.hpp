// digest.hpp — SHA-256 for manifest output integrity.
#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace frog {

// Hex-encoded SHA-256 of the bytes.
std::string sha256_hex(std::string_view data);

}  // namespace frog
