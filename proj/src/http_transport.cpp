#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "biasprobe/frequency.hpp"

namespace biasprobe {

HttpTransport::HttpTransport(std::string host, std::chrono::seconds timeout)
    : host_(std::move(host)), timeout_(timeout) {}

std::string HttpTransport::fetch(const NgramQuery& query) {
  httplib::Client client(host_);
  client.set_connection_timeout(timeout_);
  client.set_read_timeout(timeout_);
  client.set_follow_location(true);
  auto res = client.Get(query.target());
  if (!res) {
    throw TransientTransportError("GET " + host_ + query.target() + ": " +
                                  httplib::to_string(res.error()));
  }
  if (res->status == 429 || res->status >= 500) {
    throw TransientTransportError("GET " + query.target() + ": HTTP " + std::to_string(res->status));
  }
  if (res->status != 200) {
    throw TransportError("GET " + query.target() + ": HTTP " + std::to_string(res->status));
  }
  return res->body;
}

}  // namespace biasprobe
