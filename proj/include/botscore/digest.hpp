#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace botscore {

// Incremental 64-bit FNV-1a. Used for registry, dataset and model digests;
// not a security boundary.
class Digest {
public:
    Digest& update(std::string_view bytes);
    Digest& update(std::uint64_t v);
    std::uint64_t value() const noexcept { return state_; }
    // 16 lowercase hex characters.
    std::string hex() const;

private:
    std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

std::string digest_hex(std::string_view bytes);

}  // namespace botscore
