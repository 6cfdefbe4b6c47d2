#include "qpw/catalog.hpp"

#include "qpw/errors.hpp"

#include <algorithm>
#include <sstream>

namespace qpw {

Quiver build_quiver(int n, const std::vector<Arrow>& arrows) { return Quiver(n, arrows); }

NCElement build_element(const Quiver& q, const std::vector<std::pair<Scalar, std::string>>& terms, int trust) {
    NCElement e;
    e.trust = trust;
    for (const auto& [c, text] : terms) {
        std::istringstream in(text);
        std::vector<std::string> ids;
        for (std::string id; in >> id;) ids.push_back(id);
        e.add(path_from_ids(q, ids), c);
    }
    return e;
}

namespace {

std::string str2(int a, int b) { return std::to_string(a) + std::to_string(b); }

Quiver q1_quiver() {
    std::vector<Arrow> a;
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j) {
            a.push_back({"a" + str2(j, i), i, j + 2});
            a.push_back({"b" + str2(i, j), j + 2, i + 4});
            a.push_back({"c" + str2(i, j), j + 4, i});
        }
    return Quiver(6, a);
}

std::string q1_term(int i, int j, int k) {
    return "c" + str2(i, k) + " b" + str2(k, j) + " a" + str2(j, i);
}

Quiver q2_quiver() {
    return Quiver(6, {{"a1", 3, 1}, {"a2", 4, 1}, {"b1", 2, 3}, {"b2", 2, 4},
                      {"c1", 5, 2}, {"c2", 6, 2}, {"d1", 1, 5}, {"d2", 1, 6}});
}

Quiver q3_quiver() {
    return Quiver(6, {{"a1", 3, 1}, {"a2", 4, 1}, {"a3", 6, 1}, {"b1", 2, 3}, {"b2", 2, 4}, {"b3", 2, 6},
                      {"c", 5, 2}, {"d", 1, 5}, {"e", 1, 2}});
}

Quiver q4_quiver() {
    return Quiver(6, {{"a1", 3, 1}, {"a2", 4, 1}, {"a3", 6, 1}, {"a4", 5, 1}, {"b1", 2, 3}, {"b2", 2, 4},
                      {"b3", 2, 6}, {"b4", 2, 5}, {"e1", 1, 2}, {"e2", 1, 2}});
}

Quiver t1_quiver() {
    return Quiver(3, {{"a1", 1, 2}, {"a2", 1, 2}, {"b1", 2, 3}, {"b2", 2, 3}, {"c1", 3, 1}, {"c2", 3, 1}});
}

Quiver t2_quiver() {
    return Quiver(4, {{"a1", 1, 2}, {"a2", 1, 2}, {"b1", 3, 1}, {"b2", 4, 1}, {"c1", 2, 3}, {"c2", 2, 4}, {"d", 3, 4}});
}

Quiver x6_quiver() {
    return Quiver(6, {{"a1", 1, 3}, {"a1'", 1, 3}, {"a2", 2, 4}, {"a2'", 2, 4}, {"b1", 3, 6}, {"b2", 4, 6},
                      {"c1", 6, 1}, {"c2", 6, 2}, {"d", 5, 6}});
}

Quiver x7_quiver() {
    return Quiver(7, {{"a1", 1, 3}, {"a1'", 1, 3}, {"a2", 2, 4}, {"a2'", 2, 4}, {"b1", 3, 6}, {"b2", 4, 6},
                      {"c1", 6, 1}, {"c2", 6, 2}, {"d", 5, 6}, {"e", 6, 7}, {"f1", 7, 5}, {"f2", 7, 5}});
}

Quiver e_quiver() {
    return Quiver(5, {{"a1", 1, 2}, {"a2", 1, 3}, {"a3", 1, 4}, {"b1", 2, 5}, {"b2", 3, 5}, {"b3", 4, 5},
                      {"c1", 5, 1}, {"c2", 5, 1}});
}

/// Vertex 1 is the top, vertex 2 the bottom; two arrows from bottom to top.
Quiver elliptic_quiver(const std::vector<std::pair<int, int>>& edges, int n) {
    std::vector<Arrow> a{{"z1", 2, 1}, {"z2", 2, 1}};
    for (const auto& [s, t] : edges) a.push_back({"x" + std::to_string(s) + "_" + std::to_string(t), s, t});
    return Quiver(n, a);
}

Quiver e6_11() {
    // 3..8 = A, B, C, D, E, F
    return elliptic_quiver({{1, 4}, {1, 5}, {1, 7}, {3, 4}, {4, 2}, {5, 2}, {6, 5}, {7, 2}, {8, 7}}, 8);
}

Quiver e7_11() {
    // 3..9 = c0, c1, c2, c4, c5, c6, c7
    return elliptic_quiver({{1, 5}, {1, 6}, {1, 7}, {3, 4}, {4, 5}, {5, 2}, {6, 2}, {9, 8}, {8, 7}, {7, 2}}, 9);
}

Quiver e8_11() {
    // 3..10 = c0, c1, c3, c4, c5, c6, c7, c8
    return elliptic_quiver(
        {{1, 4}, {1, 5}, {1, 6}, {3, 4}, {4, 2}, {5, 2}, {10, 9}, {9, 8}, {8, 7}, {7, 6}, {6, 2}}, 10);
}

Quiver h_quiver() { return Quiver(4, {{"b1", 1, 2}, {"b2", 1, 3}, {"a1", 2, 4}, {"a2", 3, 4}, {"c", 4, 1}}); }

const std::vector<std::string> kNames = {"T1", "T2", "Q1", "Q2", "Q3", "Q4", "E", "E6_11", "E7_11", "E8_11",
                                         "X6", "X7", "K3", "K4", "H"};

CatalogEntry make_entry(const std::string& name) {
    CatalogEntry e;
    e.name = name;
    Scalar t = Scalar::t();
    if (name == "T1") {
        e.quiver = t1_quiver();
        e.potentials["S_tame"] = build_element(e.quiver, {{1, "c1 b1 a1"}, {1, "c2 b2 a2"}});
        e.potentials["S_wild"] = build_element(e.quiver, {{1, "c2 b2 a1"}, {1, "c2 b1 a2"}, {1, "c1 b2 a2"}});
        e.potentials["S_deform"] =
            build_element(e.quiver, {{1, "b1 a1 c1"}, {1, "b2 a2 c2"}, {-1, "b1 a2 c1 b2 a1 c2"}});
        e.notes.push_back("S_tame is stored in composable order c b a");
        e.notes.push_back("S_deform: the doubled triangle with a degree-6 correction term");
    } else if (name == "T2") {
        e.quiver = t2_quiver();
        e.potentials["S"] = build_element(e.quiver, {{1, "a1 b1 c1"}, {1, "a2 b2 c2"}});
        e.potentials["W"] = build_element(e.quiver, {{1, "a1 b1 c1"}, {1, "a1 b2 c2"}, {1, "a2 b2 d c1"}});
        e.notes.push_back("witness representation for W: reps t2_witness");
    } else if (name == "Q1") {
        return {name, sphere4_family(1, 1, t, true).quiver,
                {{"W_t", sphere4_family(1, 1, t, true).potential}}, {"t is the family parameter"}};
    } else if (name == "Q2") {
        return {name, sphere4_family(2, 1, t, true).quiver,
                {{"W_t", sphere4_family(2, 1, t, true).potential}}, {"t is the family parameter"}};
    } else if (name == "Q3" || name == "Q4") {
        int i = name == "Q3" ? 3 : 4;
        e.quiver = sphere4_family(i, 1, t, true).quiver;
        for (int v = 1; v <= 3; ++v)
            e.potentials["W" + std::to_string(i) + std::to_string(v) + "_t"] = sphere4_family(i, v, t, true).potential;
        e.notes.push_back("t is the family parameter");
    } else if (name == "E") {
        e.quiver = e_quiver();
        e.potentials["S"] =
            build_element(e.quiver, {{1, "c1 b1 a1"}, {1, "c1 b2 a2"}, {1, "c2 b2 a2"}, {1, "c2 b3 a3"}});
    } else if (name == "E6_11") {
        e.quiver = e6_11();
    } else if (name == "E7_11") {
        e.quiver = e7_11();
    } else if (name == "E8_11") {
        e.quiver = e8_11();
    } else if (name == "X6") {
        e.quiver = x6_quiver();
        e.potentials["W"] = build_element(e.quiver, {{1, "c1 b1 a1"}, {1, "c2 b2 a2"}, {1, "c1 b2 a2' c2 b1 a1'"}});
        e.notes.push_back("deleting vertex 5 leaves the annulus QP");
    } else if (name == "X7") {
        e.quiver = x7_quiver();
        e.notes.push_back("no potential list: restricting to vertices 1..6 gives X6");
    } else if (name == "K3" || name == "K4") {
        e.quiver = kronecker_quiver(name == "K3" ? 3 : 4);
    } else if (name == "H") {
        e.quiver = h_quiver();
        e.potentials["S"] = build_element(e.quiver, {{1, "a1 b1 c"}, {1, "a2 b2 c"}});
    } else {
        fail("UnknownEntry", "no catalog entry named " + name);
    }
    return e;
}

} // namespace

std::vector<std::string> catalog_names() { return kNames; }

CatalogEntry catalog(const std::string& name) {
    auto dot = name.find('.');
    if (dot == std::string::npos) return make_entry(name);
    CatalogEntry e = make_entry(name.substr(0, dot));
    std::string pot = name.substr(dot + 1);
    auto it = e.potentials.find(pot);
    if (it == e.potentials.end()) fail("UnknownEntry", "entry " + e.name + " has no potential " + pot);
    NCElement keep = it->second;
    e.potentials.clear();
    e.potentials[pot] = keep;
    e.name = name;
    return e;
}

QP sphere4_family(int i, int variant, const Scalar& t, bool allow_degenerate) {
    if (!allow_degenerate && (t.is_zero() || t.is_one()))
        fail("DegenerateParameter", "t = " + t.str() + " lies outside C minus {0, 1}");
    if (i == 1) {
        Quiver q = q1_quiver();
        std::vector<std::pair<Scalar, std::string>> terms{{t - Scalar(1), q1_term(2, 1, 1)}};
        for (int a = 1; a <= 2; ++a)
            for (int b = 1; b <= 2; ++b)
                for (int c = 1; c <= 2; ++c) terms.push_back({1, q1_term(a, b, c)});
        return make_qp(q, build_element(q, terms));
    }
    if (i == 2) {
        Quiver q = q2_quiver();
        std::vector<std::pair<Scalar, std::string>> terms{{t - Scalar(1), "a1 b1 c1 d1"}};
        for (int a = 1; a <= 2; ++a)
            for (int b = 1; b <= 2; ++b)
                terms.push_back({1, "a" + std::to_string(a) + " b" + std::to_string(a) + " c" + std::to_string(b) +
                                        " d" + std::to_string(b)});
        return make_qp(q, build_element(q, terms));
    }
    if (variant < 1 || variant > 3) fail("UnknownEntry", "variant must be 1, 2 or 3");
    int lead = variant, other = variant % 3 + 1;
    auto ab = [](int k) { return "a" + std::to_string(k) + " b" + std::to_string(k); };
    if (i == 3) {
        Quiver q = q3_quiver();
        std::vector<std::pair<Scalar, std::string>> terms;
        for (int k = 1; k <= 3; ++k) terms.push_back({1, ab(k) + " e"});
        terms.push_back({t, ab(lead) + " c d"});
        terms.push_back({1, ab(other) + " c d"});
        return make_qp(q, build_element(q, terms));
    }
    if (i == 4) {
        Quiver q = q4_quiver();
        std::vector<std::pair<Scalar, std::string>> terms;
        for (int k = 1; k <= 3; ++k) terms.push_back({1, ab(k) + " e1"});
        terms.push_back({t, ab(lead) + " e2"});
        terms.push_back({1, ab(other) + " e2"});
        terms.push_back({1, ab(4) + " e2"});
        return make_qp(q, build_element(q, terms));
    }
    fail("UnknownEntry", "sphere-4 family index must be 1..4");
}

QP sphere4_generic(int i, const std::map<std::string, Rational>& coeffs) {
    auto get = [&](const std::string& key) {
        auto it = coeffs.find(key);
        if (it == coeffs.end() || it->second == 0) fail("InvalidInput", "missing or zero coefficient t" + key);
        return Scalar(it->second);
    };
    if (i == 1) {
        Quiver q = q1_quiver();
        std::vector<std::pair<Scalar, std::string>> terms;
        for (int a = 1; a <= 2; ++a)
            for (int b = 1; b <= 2; ++b)
                for (int c = 1; c <= 2; ++c)
                    terms.push_back({get(std::to_string(c) + std::to_string(b) + std::to_string(a)), q1_term(a, b, c)});
        return make_qp(q, build_element(q, terms));
    }
    if (i == 2) {
        Quiver q = q2_quiver();
        std::vector<std::pair<Scalar, std::string>> terms;
        for (int a = 1; a <= 2; ++a)
            for (int b = 1; b <= 2; ++b)
                terms.push_back({get(str2(a, b)), "a" + std::to_string(a) + " b" + std::to_string(a) + " c" +
                                                      std::to_string(b) + " d" + std::to_string(b)});
        return make_qp(q, build_element(q, terms));
    }
    fail("UnknownEntry", "generic coefficients exist for families 1 and 2 only");
}

std::vector<Scalar> parameter_orbit(const Scalar& t) {
    // Id, f1, f2, f2 f1, f1 f2, f1 f2 f1 with f1(t) = 1/t and f2(t) = 1 - t
    Scalar one(1);
    std::vector<Scalar> all{t, one / t, one - t, (t - one) / t, one / (one - t), t / (t - one)};
    std::vector<Scalar> out;
    for (const Scalar& s : all)
        if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
    return out;
}

Quiver star_quiver(const std::vector<int>& arms) {
    std::vector<Arrow> a;
    int next = 2;
    for (size_t r = 0; r < arms.size(); ++r) {
        int inner = 1;
        for (int k = 0; k < arms[r]; ++k) {
            a.push_back({"s" + std::to_string(r + 1) + "_" + std::to_string(k + 1), next, inner});
            inner = next++;
        }
    }
    return Quiver(next - 1, a);
}

Quiver dynkin_quiver(char type, int n) {
    if (type == 'A') {
        if (n < 1) fail("InvalidInput", "A_n needs n >= 1");
        std::vector<Arrow> a;
        for (int i = 1; i < n; ++i) a.push_back({"p" + std::to_string(i), i, i + 1});
        return Quiver(n, a);
    }
    if (type == 'D') {
        if (n < 4) fail("InvalidInput", "D_n needs n >= 4");
        return star_quiver({1, 1, n - 3});
    }
    if (type == 'E') {
        if (n < 6 || n > 8) fail("InvalidInput", "E_n needs 6 <= n <= 8");
        return star_quiver({1, 2, n - 4});
    }
    fail("InvalidInput", std::string("unknown Dynkin type ") + type);
}

Quiver affine_quiver(char type, int n) {
    if (type == 'A') {
        if (n < 1) fail("InvalidInput", "affine A_n needs n >= 1");
        std::vector<Arrow> a;
        for (int i = 1; i <= n; ++i) a.push_back({"p" + std::to_string(i), i, i + 1});
        a.push_back({"p0", 1, n + 1});
        return Quiver(n + 1, a);
    }
    if (type == 'D') {
        if (n < 4) fail("InvalidInput", "affine D_n needs n >= 4");
        std::vector<Arrow> a{{"l1", 1, 3}, {"l2", 2, 3}, {"r1", n, n - 1}, {"r2", n + 1, n - 1}};
        for (int i = 3; i < n - 1; ++i) a.push_back({"p" + std::to_string(i), i, i + 1});
        return Quiver(n + 1, a);
    }
    if (type == 'E') {
        if (n == 6) return star_quiver({2, 2, 2});
        if (n == 7) return star_quiver({3, 3, 1});
        if (n == 8) return star_quiver({2, 5, 1});
        fail("InvalidInput", "affine E_n needs 6 <= n <= 8");
    }
    fail("InvalidInput", std::string("unknown affine type ") + type);
}

Quiver kronecker_quiver(int m) {
    std::vector<Arrow> a;
    for (int i = 1; i <= m; ++i) a.push_back({"k" + std::to_string(i), 1, 2});
    return Quiver(2, a);
}

} // namespace qpw
