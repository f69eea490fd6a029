#pragma once

#include <memory>
#include <string>

namespace shelfrec {

class ShopService;

/// Exposes a ShopService over HTTP under /v1. JSON request and response
/// bodies; permissive CORS so a browser client on another origin can call it.
class HttpServer {
 public:
  explicit HttpServer(ShopService& service);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Blocks until stop(). Returns false if the address could not be bound.
  bool listen(const std::string& host, int port);

  /// Binds to an ephemeral port and returns it (or -1).
  int bind_any_port(const std::string& host);
  /// Serves on the socket bound by bind_any_port; blocks until stop().
  bool serve();

  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace shelfrec
