#include "botscore/http_server.hpp"

#include <httplib.h>

#include "botscore/errors.hpp"

namespace botscore {

namespace {

ServiceRequest to_service_request(const httplib::Request& req) {
    ServiceRequest out;
    out.client_address = req.remote_addr;
    for (const auto& [k, v] : req.headers) out.headers[ascii_lower(k)] = v;
    for (const auto& [k, v] : req.params) out.query[k] = v;
    out.body = req.body;
    return out;
}

void write_response(const ServiceResponse& in, httplib::Response& out) {
    out.status = in.status;
    std::string content_type = "application/json";
    for (const auto& [k, v] : in.headers) {
        if (ascii_lower(k) == "content-type")
            content_type = v;
        else
            out.set_header(k, v);
    }
    if (!in.body.empty()) out.set_content(in.body, content_type);
}

}  // namespace

struct HttpServer::Impl {
    ScoringService& service;
    std::string cors_origin;
    httplib::Server server;

    Impl(ScoringService& s, std::string origin) : service(s), cors_origin(std::move(origin)) {}
};

HttpServer::HttpServer(ScoringService& service, std::string cors_origin, int threads)
    : impl_(std::make_unique<Impl>(service, std::move(cors_origin))) {
    auto& srv = impl_->server;
    Impl* self = impl_.get();
    int pool = std::max(1, threads);
    srv.new_task_queue = [pool] { return new httplib::ThreadPool(static_cast<std::size_t>(pool)); };

    srv.set_post_routing_handler([self](const httplib::Request&, httplib::Response& res) {
        res.set_header("Access-Control-Allow-Origin", self->cors_origin);
        res.set_header("Access-Control-Expose-Headers",
                       "X-RateLimit-Limit, X-RateLimit-Remaining, X-RateLimit-Reset, Retry-After");
        if (self->cors_origin != "*") res.set_header("Vary", "Origin");
    });
    srv.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) {
        res.status = 204;
        res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
        res.set_header("Access-Control-Allow-Headers", "Content-Type, X-API-Key");
        res.set_header("Access-Control-Max-Age", "600");
    });
    srv.Get(R"(/api/v1/score/([^/]+))", [self](const httplib::Request& req, httplib::Response& res) {
        write_response(self->service.score_by_name(req.matches[1].str(), to_service_request(req)), res);
    });
    srv.Post("/api/v1/score", [self](const httplib::Request& req, httplib::Response& res) {
        write_response(self->service.score_snapshot(to_service_request(req)), res);
    });
    srv.Get("/api/v1/stats/cdf", [self](const httplib::Request& req, httplib::Response& res) {
        write_response(self->service.cdf(to_service_request(req)), res);
    });
    srv.Get("/api/v1/health", [self](const httplib::Request&, httplib::Response& res) {
        write_response(self->service.health(), res);
    });
    srv.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        std::string message = "internal error";
        try {
            std::rethrow_exception(ep);
        } catch (const std::exception& e) {
            message = e.what();
        } catch (...) {
        }
        res.status = 500;
        nlohmann::json body = {{"error", {{"code", "internal_error"}, {"message", message}}}};
        res.set_content(body.dump(), "application/json");
    });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
    auto& srv = impl_->server;
    if (port == 0) {
        int bound = srv.bind_to_any_port(host);
        if (bound < 0) throw Error("cannot bind " + host);
        return bound;
    }
    if (!srv.bind_to_port(host, port)) throw Error("cannot bind " + host + ":" + std::to_string(port));
    return port;
}

void HttpServer::serve() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
    if (impl_) impl_->server.stop();
}

bool HttpServer::running() const { return impl_->server.is_running(); }

}  // namespace botscore
