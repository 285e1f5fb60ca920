#pragma once

#include <cstdint>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>

#include "botscore/time.hpp"

namespace botscore {

struct RateLimitConfig {
    int limit = 180;
    Timestamp window_seconds = 900;
};

struct RateDecision {
    bool allowed = false;
    int remaining = 0;
    Timestamp reset_at = 0;  // end of the current window
};

// Fixed-window limiter. A key's window opens at its first request and lasts
// window_seconds; a request at or after reset_at opens a new window.
class RateLimiter {
public:
    explicit RateLimiter(RateLimitConfig config = {});

    RateDecision allow_request(std::string_view key, Timestamp now);

    const RateLimitConfig& config() const noexcept { return config_; }
    std::size_t tracked_keys() const;

private:
    struct Window {
        Timestamp start = 0;
        int count = 0;
    };

    RateLimitConfig config_;
    mutable std::mutex mutex_;
    std::unordered_map<std::string, Window> windows_;
};

}  // namespace botscore
