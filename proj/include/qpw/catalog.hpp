#pragma once

#include "qpw/qp.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace qpw {

/// Quiver from (id, source, target) triples.
Quiver build_quiver(int n, const std::vector<Arrow>& arrows);
/// Potential from (coefficient, "id id id") pairs written in printed order.
NCElement build_element(const Quiver& q, const std::vector<std::pair<Scalar, std::string>>& terms,
                        int trust = kDefaultTrust);

struct CatalogEntry {
    std::string name;
    Quiver quiver;
    std::map<std::string, NCElement> potentials;
    std::vector<std::string> notes;
};

std::vector<std::string> catalog_names();
/// "T2" returns every potential; "T2.W" narrows to one. UnknownEntry otherwise.
CatalogEntry catalog(const std::string& name);

/// Sphere-4 family. i in 1..4; variant selects W(3,v) or W(4,v) and is
/// ignored for i = 1, 2. DegenerateParameter for t in {0, 1} unless allowed.
QP sphere4_family(int i, int variant, const Scalar& t, bool allow_degenerate = false);
/// Generic coefficients: keys "kji" for i = 1 (t_kji) and "ij" for i = 2.
QP sphere4_generic(int i, const std::map<std::string, Rational>& coeffs);
/// Orbit of t under the group generated by t -> 1/t and t -> 1-t:
/// {t, 1/t, 1-t, (t-1)/t, 1/(1-t), t/(t-1)} with duplicates removed.
std::vector<Scalar> parameter_orbit(const Scalar& t);

/// Star quiver with arms of the given lengths, all arrows oriented toward the center.
Quiver star_quiver(const std::vector<int>& arms);
Quiver dynkin_quiver(char type, int n);
/// Affine types: 'A' (n+1 vertices, cyclic non-oriented), 'D', 'E'.
Quiver affine_quiver(char type, int n);
Quiver kronecker_quiver(int m);

} // namespace qpw
