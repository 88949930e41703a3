#include "cminer/probe/http_client.hpp"

#include <stdexcept>

#include <httplib.h>

namespace cminer::probe {

namespace {

class HttplibClient : public HttpClient {
 public:
  explicit HttplibClient(const std::string& baseUrl) : client_(baseUrl) {
    client_.set_connection_timeout(5, 0);
    client_.set_read_timeout(30, 0);
  }

  HttpResult post(const std::string& path, const std::string& jsonBody,
                  const Headers& headers) override {
    httplib::Headers h;
    for (const auto& [k, v] : headers) h.emplace(k, v);
    httplib::Result res = client_.Post(path, h, jsonBody, "application/json");
    if (!res) return TransportError{httplib::to_string(res.error())};
    return HttpResponse{res->status, res->body};
  }

 private:
  httplib::Client client_;
};

}  // namespace

std::unique_ptr<HttpClient> makeHttplibClient(const std::string& baseUrl) {
  return std::make_unique<HttplibClient>(baseUrl);
}

}  // namespace cminer::probe
