#pragma once

#include <memory>
#include <string>

#include "botscore/service.hpp"

namespace botscore {

// Binds ScoringService to HTTP routes:
//   GET  /api/v1/score/{screen_name}[?detail=1]
//   POST /api/v1/score[?detail=1]
//   GET  /api/v1/stats/cdf?bins=K
//   GET  /api/v1/health
// Every response carries CORS headers for `cors_origin`; OPTIONS preflight is
// answered for all paths.
class HttpServer {
public:
    HttpServer(ScoringService& service, std::string cors_origin = "*", int threads = 8);
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    // Returns the bound port (an ephemeral one when `port` is 0). Throws Error.
    int bind(const std::string& host, int port);
    // Blocks until stop().
    void serve();
    void stop();
    bool running() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace botscore
