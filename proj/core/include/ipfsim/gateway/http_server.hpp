// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ipfsim/gateway/gateway.hpp"

#include <memory>
#include <string>
#include <thread>

namespace ipfsim::gw {

/// HTTP/1.1 front end for a Gateway. Responses carry X-Cache-Tier and
/// Content-Length; every request is also written to `access_log` when set.
class HttpServer {
 public:
  explicit HttpServer(Gateway& gateway, std::function<void(const std::string&)> access_log = {});
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds to host:port (port 0 picks a free one) and returns the port.
  Result<int> bind(const std::string& host, int port);
  /// Serves until stop(); blocking.
  void run();
  /// Serves on a background thread.
  void start();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::thread thread_;
};

}  // namespace ipfsim::gw
