#include "polarlex/http_api.h"

#include <charconv>

#include "httplib.h"
#include "json.hpp"
#include "polarlex/error.h"

namespace polarlex {

using nlohmann::json;

namespace {

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& message) {
  send_json(res, status, {{"error", message}});
}

json kappa_json(const DomainAgreement& a) {
  if (!a.result) return {{"domain", a.domain}, {"available", false}};
  const KappaResult& k = *a.result;
  return {{"domain", a.domain},
          {"available", true},
          {"kappa", k.kappa},
          {"observed_agreement", k.observed_agreement},
          {"expected_agreement", k.expected_agreement},
          {"item_count", k.item_count},
          {"rater_count", k.rater_count}};
}

// Maps service exceptions onto status codes.
template <typename Handler>
void guarded(httplib::Response& res, Handler&& handler) {
  try {
    handler();
  } catch (const NotFoundError& e) {
    send_error(res, 404, e.what());
  } catch (const ConflictError& e) {
    send_error(res, 409, e.what());
  } catch (const ValidationError& e) {
    send_error(res, 400, e.what());
  } catch (const UsageError& e) {
    send_error(res, 400, e.what());
  } catch (const json::exception& e) {
    send_error(res, 400, std::string("malformed JSON body: ") + e.what());
  } catch (const std::exception& e) {
    send_error(res, 500, e.what());
  }
}

}  // namespace

struct ApiServer::Impl {
  AnnotationService& service;
  httplib::Server server;

  explicit Impl(AnnotationService& s) : service(s) { routes(); }

  void routes() {
    // No SO_REUSEPORT: a second server on the same port must fail to bind.
    server.set_socket_options([](socket_t sock) {
      int yes = 1;
      ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
    });
    server.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
    server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
      res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
      res.status = 204;
    });

    server.Post("/api/sessions", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const json body = json::parse(req.body);
        if (!body.is_object() || !body.contains("annotator") || !body["annotator"].is_string())
          throw ValidationError("body must be {\"annotator\": string}");
        const auto annotator = body["annotator"].get<std::string>();
        const auto id = service.create_session(annotator);
        send_json(res, 201, {{"session_id", id}, {"annotator", annotator}});
      });
    });

    server.Get(R"(/api/sessions/([^/]+)/next)",
               [this](const httplib::Request& req, httplib::Response& res) {
                 guarded(res, [&] {
                   const auto item = service.next_item(req.matches[1]);
                   if (!item) {
                     res.status = 204;
                     return;
                   }
                   send_json(res, 200,
                             {{"lemma", item->lemma},
                              {"domain", item->domain},
                              {"position", item->position},
                              {"total", item->total},
                              {"instructions", service.instructions()},
                              {"example", ""}});
                 });
               });

    server.Post(R"(/api/sessions/([^/]+)/tags)",
                [this](const httplib::Request& req, httplib::Response& res) {
                  guarded(res, [&] {
                    const json body = json::parse(req.body);
                    if (!body.is_object()) throw ValidationError("body must be a JSON object");
                    const auto lemma = body.at("lemma").get<std::string>();
                    const auto domain = body.at("domain").get<std::string>();
                    const json& tag_json = body.at("tag");
                    if (!tag_json.is_number_integer())
                      throw ValidationError("tag must be the integer -1, 0 or 1");
                    const auto tag = PolarityTag::from_int(tag_json.get<int>());
                    bool amend = false;
                    if (body.contains("amend")) {
                      if (!body["amend"].is_boolean()) throw ValidationError("amend must be boolean");
                      amend = body["amend"].get<bool>();
                    }
                    const WriteKind kind =
                        service.submit(req.matches[1], lemma, domain, tag, amend);
                    send_json(res, 201,
                              {{"lemma", lemma},
                               {"domain", domain},
                               {"tag", tag.value()},
                               {"action", kind == WriteKind::kSet ? "set" : "amend"}});
                  });
                });

    server.Get("/api/progress", [this](const httplib::Request&, httplib::Response& res) {
      guarded(res, [&] {
        const ProgressView view = service.progress();
        json entries = json::array();
        for (const auto& e : view.entries)
          entries.push_back({{"annotator", e.annotator},
                             {"domain", e.domain},
                             {"tagged", e.tagged},
                             {"total", e.total}});
        send_json(res, 200, {{"entries", entries}, {"overall", view.overall}});
      });
    });

    server.Get("/api/agreement", [this](const httplib::Request&, httplib::Response& res) {
      guarded(res, [&] {
        json domains = json::array();
        for (const auto& a : service.agreement()) domains.push_back(kappa_json(a));
        send_json(res, 200, {{"domains", domains}});
      });
    });
  }
};

ApiServer::ApiServer(AnnotationService& service) : impl_(std::make_unique<Impl>(service)) {}

ApiServer::~ApiServer() = default;

int ApiServer::bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = impl_->server.bind_to_any_port(host);
    if (bound < 0) throw std::runtime_error("cannot bind " + host);
    return bound;
  }
  if (!impl_->server.bind_to_port(host, port))
    throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port) +
                             " (address in use or not permitted)");
  return port;
}

void ApiServer::run() { impl_->server.listen_after_bind(); }

void ApiServer::stop() { impl_->server.stop(); }

void ApiServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

std::pair<std::string, int> parse_listen_address(const std::string& address) {
  const std::size_t colon = address.rfind(':');
  if (colon == std::string::npos) throw UsageError("listen address must be HOST:PORT");
  std::string host = address.substr(0, colon);
  if (host.size() >= 2 && host.front() == '[' && host.back() == ']')
    host = host.substr(1, host.size() - 2);
  if (host.empty()) host = "0.0.0.0";
  const std::string port_text = address.substr(colon + 1);
  int port = -1;
  const auto [ptr, ec] =
      std::from_chars(port_text.data(), port_text.data() + port_text.size(), port);
  if (port_text.empty() || ec != std::errc() || ptr != port_text.data() + port_text.size() ||
      port < 0 || port > 65535)
    throw UsageError("invalid port in listen address: " + address);
  return {host, port};
}

}  // namespace polarlex
