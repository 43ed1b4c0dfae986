// SPDX-License-Identifier: Apache-2.0

#include "ipfsim/gateway/http_server.hpp"

#include <httplib.h>

#include <mutex>

namespace ipfsim::gw {

struct HttpServer::Impl {
  Impl(Gateway& g, std::function<void(const std::string&)> log)
      : gateway(g), access_log(std::move(log)) {}

  Gateway& gateway;
  std::function<void(const std::string&)> access_log;
  httplib::Server server;
  std::size_t logged = 0;
  std::mutex log_mutex;

  void serve(const httplib::Request& req, httplib::Response& res) {
    const auto r = gateway.handle(req.method, req.path);
    res.status = r.status;
    if (r.tier) res.set_header("X-Cache-Tier", std::string(tier_name(*r.tier)));
    if (r.status == 200 && r.body) {
      res.set_content(reinterpret_cast<const char*>(r.body->data()), r.body->size(),
                      "application/octet-stream");
    } else {
      res.set_content(r.error + "\n", "text/plain");
    }
    if (access_log) {
      std::lock_guard lock(log_mutex);
      const auto entries = gateway.access_log();
      for (; logged < entries.size(); ++logged) access_log(access_log_line(entries[logged]));
    }
  }
};

HttpServer::HttpServer(Gateway& gateway, std::function<void(const std::string&)> access_log)
    : impl_(std::make_unique<Impl>(gateway, std::move(access_log))) {
  auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    impl_->serve(req, res);
  };
  const std::string any = R"(/.*)";
  impl_->server.Get(any, handler);
  impl_->server.Post(any, handler);
  impl_->server.Put(any, handler);
  impl_->server.Delete(any, handler);
  impl_->server.Patch(any, handler);
}

HttpServer::~HttpServer() { stop(); }

Result<int> HttpServer::bind(const std::string& host, int port) {
  int bound = port;
  if (port == 0) {
    bound = impl_->server.bind_to_any_port(host);
    if (bound < 0) return Errc::invalid_config;
  } else if (!impl_->server.bind_to_port(host, port)) {
    return Errc::invalid_config;
  }
  return bound;
}

void HttpServer::run() { impl_->server.listen_after_bind(); }

void HttpServer::start() {
  thread_ = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

void HttpServer::stop() {
  impl_->server.stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace ipfsim::gw
