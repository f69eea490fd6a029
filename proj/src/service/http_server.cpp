#include "shelfrec/service/http_server.hpp"

#include <httplib.h>

#include "shelfrec/service/shop_service.hpp"

namespace shelfrec {

using nlohmann::json;

struct HttpServer::Impl {
  explicit Impl(ShopService& s) : service(s) {}

  ShopService& service;
  httplib::Server server;
};

namespace {

void send(httplib::Response& res, const ApiResponse& api) {
  res.status = api.status;
  res.set_content(api.body.dump(), "application/json");
}

// Empty bodies count as {} so body-less POSTs (dismiss, checkout) work.
json body_of(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  return json::parse(req.body);
}

template <typename F>
httplib::Server::Handler with_body(F&& f) {
  return [f = std::forward<F>(f)](const httplib::Request& req, httplib::Response& res) {
    json body;
    try {
      body = body_of(req);
    } catch (const json::exception& e) {
      send(res, {400, {{"error", {{"code", "malformed_body"}, {"message", e.what()}}}}});
      return;
    }
    send(res, f(req, body));
  };
}

}  // namespace

HttpServer::HttpServer(ShopService& service) : impl_(std::make_unique<Impl>(service)) {
  auto& srv = impl_->server;
  ShopService& svc = impl_->service;

  srv.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                           {"Access-Control-Allow-Headers", "Content-Type"},
                           {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
  srv.Options(R"(/v1/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  srv.Post("/v1/sessions", with_body([&svc](const auto&, const json& b) {
             return svc.create_session(b);
           }));
  srv.Get("/v1/sessions/:id", [&svc](const httplib::Request& req, httplib::Response& res) {
    send(res, svc.get_session(req.path_params.at("id")));
  });
  srv.Post("/v1/sessions/:id/position", with_body([&svc](const auto& req, const json& b) {
             return svc.post_position(req.path_params.at("id"), b);
           }));
  srv.Post("/v1/sessions/:id/pickup", with_body([&svc](const auto& req, const json& b) {
             return svc.pickup(req.path_params.at("id"), b);
           }));
  srv.Post("/v1/sessions/:id/decision", with_body([&svc](const auto& req, const json& b) {
             return svc.decision(req.path_params.at("id"), b);
           }));
  srv.Post("/v1/sessions/:id/panels/:rec/purchase",
           with_body([&svc](const auto& req, const json& b) {
             return svc.panel_purchase(req.path_params.at("id"), req.path_params.at("rec"), b);
           }));
  srv.Post("/v1/sessions/:id/panels/:rec/dismiss", with_body([&svc](const auto& req, const json&) {
             return svc.panel_dismiss(req.path_params.at("id"), req.path_params.at("rec"));
           }));
  srv.Post("/v1/sessions/:id/checkout", with_body([&svc](const auto& req, const json&) {
             return svc.checkout(req.path_params.at("id"));
           }));
  srv.Get("/v1/catalog", [&svc](const httplib::Request&, httplib::Response& res) {
    send(res, svc.catalog());
  });
  srv.Get("/v1/layout", [&svc](const httplib::Request&, httplib::Response& res) {
    send(res, svc.layout());
  });
  srv.Post("/v1/admin/model/rebuild", with_body([&svc](const auto&, const json& b) {
             return svc.rebuild_model(b);
           }));
  srv.Get("/v1/admin/model/stats", [&svc](const httplib::Request&, httplib::Response& res) {
    send(res, svc.model_stats());
  });

  srv.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (!res.body.empty()) return;
    const char* code = res.status == 404 ? "not_found" : "http_error";
    res.set_content(json{{"error", {{"code", code}, {"message", "no such route"}}}}.dump(),
                    "application/json");
  });
}

HttpServer::~HttpServer() { stop(); }

bool HttpServer::listen(const std::string& host, int port) {
  return impl_->server.listen(host, port);
}

int HttpServer::bind_any_port(const std::string& host) {
  return impl_->server.bind_to_any_port(host);
}

bool HttpServer::serve() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_) impl_->server.stop();
}

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace shelfrec
