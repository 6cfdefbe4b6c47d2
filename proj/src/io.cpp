#include "qpw/io.hpp"

#include "qpw/errors.hpp"

namespace qpw {

namespace {

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) fail("InvalidInput", std::string("missing field \"") + key + "\"");
    return j.at(key);
}

int int_field(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_number_integer()) fail("InvalidInput", std::string("field \"") + key + "\" must be an integer");
    return v.get<int>();
}

std::string string_of(const json& v, const char* what) {
    if (!v.is_string()) fail("InvalidInput", std::string(what) + " must be a string");
    return v.get<std::string>();
}

Scalar scalar_of(const json& v) {
    if (v.is_number_integer()) return Scalar(v.get<long>());
    return Scalar::parse(string_of(v, "coefficient"));
}

json matrix_json(const Matrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
        rows.push_back(row);
    }
    return rows;
}

json paths_json(const Quiver& q, const std::vector<Path>& ps) {
    json out = json::array();
    for (const Path& p : ps) out.push_back(path_ids(q, p));
    return out;
}

} // namespace

json encode(const Quiver& q) {
    json arrows = json::array();
    for (const Arrow& a : q.arrows()) arrows.push_back({{"id", a.id}, {"from", a.s}, {"to", a.t}});
    return {{"vertices", q.n()}, {"arrows", arrows}};
}

Quiver quiver_from_json(const json& j) {
    if (j.is_object() && j.contains("b_matrix") && !j.contains("arrows")) {
        BMatrix b;
        try {
            b = j.at("b_matrix").get<BMatrix>();
        } catch (const json::exception&) {
            fail("InvalidInput", "b_matrix must be an integer matrix");
        }
        return from_b_matrix(b);
    }
    int n = int_field(j, "vertices");
    if (n < 0) fail("InvalidInput", "vertex count must be nonnegative");
    const json& arr = field(j, "arrows");
    if (!arr.is_array()) fail("InvalidInput", "\"arrows\" must be an array");
    std::vector<Arrow> arrows;
    for (const json& a : arr) {
        Arrow x{string_of(field(a, "id"), "arrow id"), int_field(a, "from"), int_field(a, "to")};
        if (x.s < 1 || x.s > n || x.t < 1 || x.t > n) fail("InvalidInput", "arrow " + x.id + " leaves the vertex range");
        arrows.push_back(x);
    }
    return Quiver(n, arrows);
}

json encode(const Quiver& q, const NCElement& s) {
    bool rational = true;
    json terms = json::array();
    for (const auto& [p, c] : s.terms) {
        if (!c.is_rational()) rational = false;
        terms.push_back({{"coeff", c.str()}, {"cycle", path_ids(q, p)}});
    }
    json out = {{"field", rational ? "Q" : "Q(t)"}, {"terms", terms}};
    if (s.trust != kInfinity) out["trust"] = s.trust;
    if (!s.exact) out["exact"] = false;
    return out;
}

NCElement potential_from_json(const Quiver& q, const json& j, int trust) {
    const json& terms = field(j, "terms");
    if (!terms.is_array()) fail("InvalidInput", "\"terms\" must be an array");
    NCElement s;
    s.trust = trust;
    for (const json& t : terms) {
        const json& cyc = field(t, "cycle");
        if (!cyc.is_array()) fail("InvalidInput", "\"cycle\" must be an array of arrow ids");
        std::vector<std::string> ids;
        for (const json& id : cyc) ids.push_back(string_of(id, "arrow id"));
        Scalar c = t.contains("coeff") ? scalar_of(t.at("coeff")) : Scalar(1);
        s.add(path_from_ids(q, ids), c);
    }
    s.truncate(trust);
    return s;
}

json encode(const QP& qp) {
    json out = encode(qp.quiver);
    out["potential"] = encode(qp.quiver, qp.potential);
    return out;
}

QP qp_from_json(const json& j, int trust) {
    Quiver q = quiver_from_json(j);
    if (j.contains("trust")) {
        if (!j.at("trust").is_number_integer()) fail("InvalidInput", "\"trust\" must be an integer");
        trust = j.at("trust").get<int>();
    }
    NCElement s;
    s.trust = trust;
    if (j.contains("potential")) s = potential_from_json(q, j.at("potential"), trust);
    return make_qp(q, s);
}

json encode(const MarkedSurface& s) {
    return {{"g", s.genus}, {"b", s.boundary_components()}, {"marks", s.marks}, {"p", s.punctures}};
}

MarkedSurface surface_from_json(const json& j) {
    MarkedSurface s;
    s.genus = int_field(j, "g");
    s.punctures = j.contains("p") ? int_field(j, "p") : 0;
    if (j.contains("marks")) {
        try {
            s.marks = j.at("marks").get<std::vector<int>>();
        } catch (const json::exception&) {
            fail("InvalidInput", "\"marks\" must be an integer array");
        }
    }
    if (j.contains("b") && int_field(j, "b") != s.boundary_components())
        fail("InvalidInput", "\"b\" disagrees with the length of \"marks\"");
    return s;
}

json encode(const Triangulation& tau) {
    json tris = json::array();
    json folded = json::array();
    for (const auto& t : tau.triangles) {
        tris.push_back({t[0], t[1], t[2]});
        for (int k = 0; k < 3; ++k)
            if (t[k] == t[(k + 1) % 3]) folded.push_back({t[(k + 2) % 3], t[k]});
    }
    return {{"surface", encode(tau.surface)}, {"arcs", tau.arcs}, {"triangles", tris}, {"self_folded", folded}};
}

Triangulation triangulation_from_json(const json& j) {
    Triangulation tau;
    tau.surface = surface_from_json(field(j, "surface"));
    const json& arcs = field(j, "arcs");
    if (!arcs.is_array()) fail("InvalidInput", "\"arcs\" must be an array");
    for (const json& a : arcs) tau.arcs.push_back(string_of(a, "arc name"));
    const json& tris = field(j, "triangles");
    if (!tris.is_array()) fail("InvalidInput", "\"triangles\" must be an array");
    for (const json& t : tris) {
        if (!t.is_array() || t.size() != 3) fail("InvalidInput", "each triangle lists three sides");
        tau.triangles.push_back({string_of(t[0], "side"), string_of(t[1], "side"), string_of(t[2], "side")});
    }
    return tau;
}

json encode(const Representation& m) {
    json mats = json::object();
    for (const auto& [id, mat] : m.mats) mats[id] = matrix_json(mat);
    return {{"dims", m.dims}, {"mats", mats}};
}

Representation rep_from_json(const Quiver& q, const json& j) {
    Representation m;
    const json& dims = field(j, "dims");
    if (!dims.is_array()) fail("InvalidInput", "\"dims\" must be an array");
    for (const json& d : dims) {
        if (!d.is_number_integer()) fail("InvalidInput", "dimensions must be integers");
        m.dims.push_back(d.get<int>());
    }
    const json& mats = field(j, "mats");
    if (!mats.is_object()) fail("InvalidInput", "\"mats\" must map arrow ids to matrices");
    for (const auto& [id, rows] : mats.items()) {
        if (!rows.is_array()) fail("InvalidInput", "matrix of " + id + " must be an array of rows");
        int r = static_cast<int>(rows.size());
        int c = r > 0 ? static_cast<int>(rows[0].size()) : 0;
        // an empty row list carries no column count, so take it from the source dimension
        int a = q.find(id);
        if (r == 0 && a >= 0 && q.arrow(a).s <= static_cast<int>(m.dims.size())) c = m.dims[q.arrow(a).s - 1];
        Matrix mat(r, c);
        for (int i = 0; i < r; ++i) {
            if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != c)
                fail("ShapeMismatch", "ragged matrix for " + id);
            for (int k = 0; k < c; ++k) mat(i, k) = scalar_of(rows[i][k]);
        }
        m.mats[id] = mat;
    }
    return m;
}

json encode(const BMatrix& b) { return b; }

json encode(const Classification& c) {
    json out = {{"verdict", c.verdict},
                {"reason", c.reason},
                {"class_size", c.class_size >= 0 ? json(c.class_size) : json(nullptr)},
                {"witness", c.has_witness ? json(c.witness) : json(nullptr)}};
    if (c.per_component) {
        json comps = json::array();
        for (const Classification& k : c.components) comps.push_back(encode(k));
        out["per_component"] = true;
        out["components"] = comps;
    }
    return out;
}

json encode(const MutationClassReport& r, bool with_keys) {
    json out = {{"status", r.finite ? "finite" : "infinite"},
                {"size", r.finite ? json(r.size()) : json(nullptr)},
                {"witness", r.finite ? json(nullptr) : json(r.witness)},
                {"cap", r.cap}};
    if (with_keys && r.finite) out["keys"] = r.keys;
    return out;
}

json encode(const NondegReport& r) {
    json loci = json::array();
    for (const Locus& l : r.loci) {
        json pairing = json::array();
        for (const auto& row : l.pairing) {
            json jr = json::array();
            for (const Scalar& s : row) jr.push_back(s.str());
            pairing.push_back(jr);
        }
        loci.push_back({{"t", l.t.get_str()}, {"witness", l.witness}, {"pairing", pairing}});
    }
    json excluded = json::array();
    for (const Rational& x : r.excluded) excluded.push_back(x.get_str());
    return {{"degenerate", r.degenerate},
            {"witness", r.witness},
            {"depth_searched", r.depth_searched},
            {"trust_at_leaves", r.trust_at_leaves},
            {"nodes", r.nodes},
            {"symbolic", r.symbolic},
            {"loci", loci},
            {"excluded", excluded},
            {"summary", r.summary}};
}

json encode(const ReductionResult& r) {
    json pairs = json::array();
    for (const auto& [a, b] : r.trivial_pairs) pairs.push_back({a, b});
    return {{"qp", encode(r.reduced)}, {"two_acyclic", r.two_acyclic}, {"trivial_pairs", pairs}};
}

json encode(const TruncatedAlgebra& alg) {
    json out = {{"p", alg.p}, {"dim", alg.dimension}, {"stabilized", alg.stabilized()}};
    out["dims"] = std::vector<int>(alg.dims.begin() + 1, alg.dims.end());
    out["basis_by_degree"] = alg.basis_by_degree;
    out["stable_degree"] = alg.stabilized() ? json(alg.stable_degree) : json(nullptr);
    return out;
}

json encode(const UniquenessCertificate& c, const Quiver& q) {
    json lengths = json::array();
    for (const CertificateLength& l : c.lengths)
        lengths.push_back({{"length", l.length},
                           {"cycles", l.cycles},
                           {"passed", l.passed},
                           {"failures", paths_json(q, l.failures)}});
    return {{"passed", c.passed},  {"finite", c.finite},     {"long_s", c.long_s},
            {"bound", c.bound},    {"lengths", lengths},     {"statement", c.statement}};
}

} // namespace qpw
