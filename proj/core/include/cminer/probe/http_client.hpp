#pragma once

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace cminer::probe {

struct HttpResponse {
  int status = 0;
  std::string body;
};

struct TransportError {
  std::string message;
};

using Headers = std::vector<std::pair<std::string, std::string>>;
using HttpResult = std::variant<HttpResponse, TransportError>;

/// Transport contract for the probe runner; tests substitute an in-memory
/// fake, production wires cpp-httplib.
class HttpClient {
 public:
  virtual ~HttpClient() = default;
  virtual HttpResult post(const std::string& path, const std::string& jsonBody,
                          const Headers& headers) = 0;
};

/// Client for `http://host:port` targets.
std::unique_ptr<HttpClient> makeHttplibClient(const std::string& baseUrl);

}  // namespace cminer::probe
