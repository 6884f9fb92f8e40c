#pragma once

#include <cstdint>
#include <string_view>

namespace cade {

// FNV-1a 64-bit, used for model fingerprints and seed derivation.
struct Fnv1a {
    std::uint64_t value = 1469598103934665603ull;

    void update(const void* data, std::size_t n) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < n; ++i) {
            value ^= p[i];
            value *= 1099511628211ull;
        }
    }
    void update(std::string_view s) { update(s.data(), s.size()); }
};

}  // namespace cade
