#pragma once

#include "qpw/io.hpp"

#include <memory>
#include <ostream>
#include <string>
#include <vector>

namespace qpw {

/// Every verb and endpoint is a pure function from a request document to a
/// response document. A request names its input under "quiver", "qp",
/// "triangulation" or "surface", either inline or as a preset name.
json op_quiver_mutate(const json& req);
json op_qp_mutate(const json& req);
json op_reduce(const json& req);
json op_nondeg(const json& req);
json op_classify(const json& req);
json op_mutation_class(const json& req);
json op_jacobian_dim(const json& req);
json op_corner_test(const json& req);
json op_surface_rank(const json& req);
json op_surface_quiver(const json& req);
json op_surface_flip(const json& req);
json op_surface_potential(const json& req);
json op_surface_preset(const json& req);
json op_catalog(const json& req);
json op_normalize(const json& req);
json op_uniqueness(const json& req);
json op_rep_check(const json& req);
json op_rep_mutate(const json& req);
json op_presets();

/// Quivers by name: catalog entries, surface presets, A5, D6, E8, ~A3, K3.
Quiver preset_quiver(const std::string& name);

/// Canonical text of a response: two-space indented JSON plus a newline.
std::string dump(const json& j);

/// Exit code 0 on success, 1 on a domain error, 2 on a usage error or a
/// malformed input document.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct HttpResponse {
    int status = 200;
    std::string body;
};

/// 400 for malformed JSON or a malformed document, 422 for domain errors,
/// 404 for unknown routes.
HttpResponse handle_request(const std::string& method, const std::string& path, const std::string& body);

/// HTTP front end over handle_request. Requests are served concurrently.
class Server {
public:
    Server();
    ~Server();
    /// Bound port (a free one when port is 0), or -1 when binding fails.
    int bind(const std::string& host, int port);
    /// Blocks until stop() is called.
    void listen();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace qpw
