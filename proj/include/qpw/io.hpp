#pragma once

#include "qpw/classify.hpp"
#include "qpw/jacobian.hpp"
#include "qpw/reps.hpp"
#include "qpw/surface.hpp"

#include <json.hpp>

namespace qpw {

using json = nlohmann::ordered_json;

/// Every parser raises InvalidInput on a structurally wrong document.
json encode(const Quiver& q);
Quiver quiver_from_json(const json& j);

json encode(const Quiver& q, const NCElement& s);
/// Terms list their cycles in printed order.
NCElement potential_from_json(const Quiver& q, const json& j, int trust = kDefaultTrust);

/// Quiver fields plus "potential" and "trust".
json encode(const QP& qp);
QP qp_from_json(const json& j, int trust = kDefaultTrust);

json encode(const MarkedSurface& s);
MarkedSurface surface_from_json(const json& j);
json encode(const Triangulation& tau);
Triangulation triangulation_from_json(const json& j);

json encode(const Representation& m);
Representation rep_from_json(const Quiver& q, const json& j);

json encode(const BMatrix& b);
json encode(const Classification& c);
json encode(const MutationClassReport& r, bool with_keys);
json encode(const NondegReport& r);
json encode(const ReductionResult& r);
json encode(const TruncatedAlgebra& alg);
json encode(const UniquenessCertificate& c, const Quiver& q);

} // namespace qpw
