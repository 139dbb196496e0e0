// Copyright 2026 The pcosrisk Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PCOSRISK_SERVICE_HPP_
#define PCOSRISK_SERVICE_HPP_

#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "pcosrisk/bundle.hpp"
#include "pcosrisk/error.hpp"

namespace pcosrisk {

struct ApiRequest {
  std::string method;  // "GET" | "POST"
  std::string path;    // without the query string
  std::map<std::string, std::string> params;
  std::string body;
};

struct ApiResponse {
  int status = 200;
  std::string body;  // JSON
};

// Machine code, human message and optional offending field. Serialized as
// {"error": {...}, "bundle_hash": "..."}.
struct ApiError {
  int status = 500;
  std::string code;
  std::string message;
  std::string field;
};

ApiError ToApiError(const Error& e);

// Stateless request handler over an immutable bundle; safe to call from many
// threads at once.
class ApiHandler {
 public:
  explicit ApiHandler(std::shared_ptr<const ModelBundle> bundle);

  ApiResponse Handle(const ApiRequest& request) const;

  const ModelBundle& bundle() const { return *bundle_; }

 private:
  ApiResponse Predict(const ApiRequest& request) const;
  ApiResponse Explain(const ApiRequest& request) const;
  ApiResponse WhatIfRoute(const ApiRequest& request) const;
  ApiResponse Rotterdam(const ApiRequest& request) const;
  ApiResponse FairnessReport(const ApiRequest& request) const;
  ApiResponse CalibrationReport(const ApiRequest& request) const;
  ApiResponse DcaReport(const ApiRequest& request) const;
  ApiResponse Metadata(const ApiRequest& request) const;
  ApiResponse ErrorResponse(const ApiError& error) const;

  std::shared_ptr<const ModelBundle> bundle_;
};

struct BindAddress {
  std::string host = "127.0.0.1";
  int port = 8080;
};

// "host:port", ":port" or "port". Throws Error(kArgument).
BindAddress ParseBindAddress(std::string_view text);

// Runs an HTTP server on a background thread until Stop() or destruction.
class HttpService {
 public:
  explicit HttpService(std::shared_ptr<const ModelBundle> bundle);
  ~HttpService();
  HttpService(const HttpService&) = delete;
  HttpService& operator=(const HttpService&) = delete;

  // Port 0 binds an ephemeral port. Returns the bound port.
  int Start(const BindAddress& address);
  void Stop();
  // Blocks until the server stops.
  void Wait();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace pcosrisk

#endif  // PCOSRISK_SERVICE_HPP_
