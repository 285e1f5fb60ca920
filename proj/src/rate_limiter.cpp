#include "botscore/rate_limiter.hpp"

#include "botscore/errors.hpp"

namespace botscore {

RateLimiter::RateLimiter(RateLimitConfig config) : config_(config) {
    if (config_.limit < 1) throw Error("rate limit must be >= 1");
    if (config_.window_seconds < 1) throw Error("rate limit window must be >= 1 second");
}

RateDecision RateLimiter::allow_request(std::string_view key, Timestamp now) {
    std::lock_guard lock(mutex_);
    auto [it, inserted] = windows_.try_emplace(std::string(key), Window{now, 0});
    Window& w = it->second;
    if (!inserted && now >= w.start + config_.window_seconds) w = Window{now, 0};

    RateDecision d;
    d.reset_at = w.start + config_.window_seconds;
    if (w.count < config_.limit) {
        ++w.count;
        d.allowed = true;
    }
    d.remaining = config_.limit - w.count;
    return d;
}

std::size_t RateLimiter::tracked_keys() const {
    std::lock_guard lock(mutex_);
    return windows_.size();
}

}  // namespace botscore
