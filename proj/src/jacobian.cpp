#include "qpw/jacobian.hpp"

#include "qpw/errors.hpp"
#include "qpw/linalg.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

namespace qpw {

namespace {

struct ArrowsHash {
    size_t operator()(const std::vector<int>& v) const {
        size_t h = v.size();
        for (int x : v) h = h * 1000003u ^ static_cast<size_t>(x + 1);
        return h;
    }
};

} // namespace

struct RelationSpan {
    std::vector<Path> columns;
    std::unordered_map<std::vector<int>, int, ArrowsHash> index;
    std::vector<int> trivial_index;  // by vertex
    Echelon echelon;

    int column_of(const Path& path) const {
        if (path.trivial()) return trivial_index[path.idem];
        auto it = index.find(path.arrows);
        return it == index.end() ? -1 : it->second;
    }

    SparseVec vectorize(const NCElement& x) const {
        std::map<int, Scalar> acc;
        for (const auto& [path, c] : x.terms) {
            int col = column_of(path);
            if (col >= 0) acc[col] += c;
        }
        SparseVec v;
        for (auto& [col, c] : acc)
            if (!c.is_zero()) v.emplace_back(col, c);
        return v;
    }
};

TruncatedAlgebra truncated_dimension(const QP& qp, int p) {
    if (p < 1) fail("InvalidArgument", "truncation order must be positive");
    const Quiver& q = qp.quiver;
    const NCElement& s = qp.potential;
    if (!s.exact && s.trust < p - 1)
        fail("TrustExceeded", "potential known to degree " + std::to_string(s.trust) + ", need " +
                                  std::to_string(p - 1));

    auto span = std::make_shared<RelationSpan>();
    span->trivial_index.assign(q.n() + 1, -1);
    // from[v][l] / to[v][l]: paths of length l starting / ending at v.
    std::vector<std::vector<std::vector<int>>> from(q.n() + 1, std::vector<std::vector<int>>(p)),
        to(q.n() + 1, std::vector<std::vector<int>>(p));
    for (int len = 0; len < p; ++len) {
        for (Path& path : paths_of_length(q, len)) {
            int col = static_cast<int>(span->columns.size());
            if (path.trivial())
                span->trivial_index[path.idem] = col;
            else
                span->index.emplace(path.arrows, col);
            from[source(q, path)][len].push_back(col);
            to[target(q, path)][len].push_back(col);
            span->columns.push_back(std::move(path));
        }
    }

    for (int a = 0; a < q.arrow_count(); ++a) {
        NCElement d = cyclic_derivative(q, s, a);
        std::vector<std::pair<const Path*, Scalar>> terms;
        int shortest = kInfinity;
        for (const auto& [path, c] : d.terms) {
            if (path.length() >= p || path.trivial()) continue;
            terms.emplace_back(&path, c);
            shortest = std::min(shortest, path.length());
        }
        if (terms.empty()) continue;
        int src = q.arrow(a).s;  // u starts where the derivative ends
        int tgt = q.arrow(a).t;  // v ends where the derivative starts
        int room = p - 1 - shortest;
        for (int lu = 0; lu <= room; ++lu) {
            for (int lv = 0; lu + lv <= room; ++lv) {
                for (int cu : from[src][lu]) {
                    const Path& u = span->columns[cu];
                    for (int cv : to[tgt][lv]) {
                        const Path& v = span->columns[cv];
                        std::map<int, Scalar> acc;
                        for (const auto& [dp, c] : terms) {
                            if (lu + lv + dp->length() >= p) continue;
                            std::vector<int> arrows;
                            arrows.reserve(lu + lv + dp->length());
                            arrows.insert(arrows.end(), u.arrows.begin(), u.arrows.end());
                            arrows.insert(arrows.end(), dp->arrows.begin(), dp->arrows.end());
                            arrows.insert(arrows.end(), v.arrows.begin(), v.arrows.end());
                            acc[span->index.at(arrows)] += c;
                        }
                        SparseVec row;
                        for (auto& [col, c] : acc)
                            if (!c.is_zero()) row.emplace_back(col, c);
                        if (!row.empty()) span->echelon.insert(std::move(row));
                    }
                }
            }
        }
    }

    TruncatedAlgebra alg;
    alg.p = p;
    alg.quiver = q;
    alg.basis_by_degree.assign(p, 0);
    for (size_t col = 0; col < span->columns.size(); ++col) {
        if (span->echelon.is_pivot(static_cast<int>(col))) continue;
        alg.basis.push_back(span->columns[col]);
        ++alg.basis_by_degree[span->columns[col].length()];
    }
    alg.dimension = static_cast<int>(alg.basis.size());
    alg.dims.assign(p + 1, 0);
    for (int d = 0; d < p; ++d) alg.dims[d + 1] = alg.dims[d] + alg.basis_by_degree[d];
    for (int d = 1; d < p; ++d)
        if (alg.basis_by_degree[d] == 0) {
            alg.stable_degree = d;
            break;
        }
    alg.span = std::move(span);
    return alg;
}

NCElement normal_form(const NCElement& x, const TruncatedAlgebra& alg) {
    const RelationSpan& span = *alg.span;
    SparseVec rem = span.echelon.reduce(span.vectorize(x));
    NCElement out;
    out.trust = alg.p - 1;
    for (auto& [col, c] : rem) out.add(span.columns[col], c);
    return out;
}

bool corner_test(const QP& qp, int vertex, int d, int p) {
    if (vertex < 1 || vertex > qp.quiver.n()) fail("InvalidVertex", "vertex out of range");
    TruncatedAlgebra alg = truncated_dimension(qp, p);
    for (int len = std::max(d, 0); len < p; ++len)
        for (const Path& c : paths_between(qp.quiver, vertex, vertex, len))
            if (!normal_form(NCElement::single(c), alg).is_zero()) return false;
    return true;
}

namespace {

bool degrees_at_most_two(const Quiver& q, std::string& detail) {
    std::vector<int> out(q.n() + 1, 0), in(q.n() + 1, 0);
    for (const Arrow& a : q.arrows()) {
        ++out[a.s];
        ++in[a.t];
    }
    for (int v = 1; v <= q.n(); ++v)
        if (out[v] > 2 || in[v] > 2) {
            detail = "vertex " + std::to_string(v) + " has " + std::to_string(std::max(out[v], in[v])) +
                     " arrows on one side";
            return false;
        }
    return true;
}

// Clause (3) with after = true, clause (4) otherwise: for each non-special
// arrow b with two composable neighbours, exactly one composite is a relation.
bool branching_ok(const Quiver& q, const std::set<std::vector<int>>& rel, const std::set<int>& special,
                  bool after, std::string& detail) {
    for (int b = 0; b < q.arrow_count(); ++b) {
        if (special.count(b)) continue;
        std::vector<std::vector<int>> two;
        for (int a = 0; a < q.arrow_count(); ++a) {
            if (after && q.arrow(a).s == q.arrow(b).t) two.push_back({a, b});
            if (!after && q.arrow(a).t == q.arrow(b).s) two.push_back({b, a});
        }
        if (two.size() != 2) continue;
        int hits = static_cast<int>(rel.count(two[0]) + rel.count(two[1]));
        if (hits != 1) {
            detail = "arrow " + q.arrow(b).id + " has " + std::to_string(hits) + " relations among its two " +
                     (after ? "successors" : "predecessors");
            return false;
        }
    }
    return true;
}

} // namespace

SpecialVerdict recognize_special(const SpecialPresentation& pres) {
    const Quiver& q = pres.quiver;
    bool skewed = !pres.special_loops.empty();
    std::string prefix = skewed ? "sg" : "g";
    SpecialVerdict v;
    v.kind = "neither";

    std::set<int> special(pres.special_loops.begin(), pres.special_loops.end());
    for (int e : special) {
        if (e < 0 || e >= q.arrow_count() || q.arrow(e).s != q.arrow(e).t) {
            v.violated = "L";
            v.detail = "special arrows must be loops";
            return v;
        }
    }
    if (!degrees_at_most_two(q, v.detail)) {
        v.violated = prefix + "1";
        return v;
    }
    std::set<std::vector<int>> rel;
    for (const Path& r : pres.relations) {
        if (r.length() != 2 || q.arrow(r.arrows[0]).s != q.arrow(r.arrows[1]).t) {
            v.violated = prefix + "2";
            v.detail = "relation " + path_str(q, r) + " is not a path of length 2";
            return v;
        }
        rel.insert(r.arrows);
    }
    if (!branching_ok(q, rel, special, true, v.detail)) {
        v.violated = prefix + "3";
        return v;
    }
    if (!branching_ok(q, rel, special, false, v.detail)) {
        v.violated = prefix + "4";
        return v;
    }
    v.kind = skewed ? "skewed-gentle" : "gentle";
    return v;
}

SminReport smin_gentle_pipeline(const QP& qp, const GlueSpec& spec) {
    const Quiver& q = qp.quiver;
    SminReport rep;
    rep.predicates = triangulation_predicates(spec);
    if (!rep.predicates.skewed_gentle) fail("BlockConditionsUnmet", rep.predicates.violated + ": " + rep.predicates.detail);
    if (spec.vertex_count() != q.n() || block_glue(spec).counts() != q.counts())
        fail("BlockConditionsUnmet", "glue data does not reproduce the quiver");
    rep.smin = qp.potential.min_part();

    // fold[v] = vertex of the folded quiver (1-based); partner blacks share one
    std::vector<int> merge(q.n() + 1);
    for (int v = 1; v <= q.n(); ++v) merge[v] = v;
    std::vector<int> folded_at;
    for (const Block& b : spec.blocks) {
        if (b.type != BlockType::IIIa && b.type != BlockType::IIIb && b.type != BlockType::IV) continue;
        int b1 = b.vertices[b.type == BlockType::IV ? 2 : 1];
        int b2 = b.vertices[b.type == BlockType::IV ? 3 : 2];
        merge[b2] = b1;
        folded_at.push_back(b1);
    }
    std::vector<int> fold(q.n() + 1, 0);
    int n = 0;
    for (int v = 1; v <= q.n(); ++v)
        if (merge[v] == v) fold[v] = ++n;
    for (int v = 1; v <= q.n(); ++v) fold[v] = fold[merge[v]];

    // arrows from the second black reuse the id of the matching first-black arrow
    std::map<std::pair<int, int>, std::string> kept;
    std::vector<std::string> image(q.arrow_count());
    for (int a = 0; a < q.arrow_count(); ++a) {
        const Arrow& ar = q.arrow(a);
        if (merge[ar.s] == ar.s && merge[ar.t] == ar.t) kept[{fold[ar.s], fold[ar.t]}] = ar.id;
    }
    std::vector<Arrow> arrows;
    for (auto& [st, id] : kept) arrows.push_back({id, st.first, st.second});
    for (int a = 0; a < q.arrow_count(); ++a) {
        const Arrow& ar = q.arrow(a);
        auto it = kept.find({fold[ar.s], fold[ar.t]});
        if (it == kept.end()) fail("BlockConditionsUnmet", "arrow " + ar.id + " has no partner after folding");
        image[a] = it->second;
    }
    for (size_t i = 0; i < folded_at.size(); ++i)
        arrows.push_back({"eps" + std::to_string(folded_at[i]), fold[folded_at[i]], fold[folded_at[i]]});
    rep.presentation.quiver = Quiver(n, arrows);
    const Quiver& fq = rep.presentation.quiver;
    for (int v : folded_at) rep.presentation.special_loops.push_back(fq.index_of("eps" + std::to_string(v)));

    std::set<Path> relations;
    for (int a = 0; a < q.arrow_count(); ++a) {
        NCElement d = cyclic_derivative(q, rep.smin, a);
        std::set<Path> monomials;
        for (const auto& [path, c] : d.terms) {
            std::vector<int> arrows_of;
            for (int x : path.arrows) arrows_of.push_back(fq.index_of(image[x]));
            monomials.insert(Path::of(arrows_of));
        }
        if (monomials.size() > 1) {
            rep.verdict.kind = "neither";
            rep.verdict.violated = folded_at.empty() ? "g2" : "sg2";
            rep.verdict.detail = "derivative by " + q.arrow(a).id + " folds to a non-monomial relation";
            return rep;
        }
        if (!monomials.empty()) relations.insert(*monomials.begin());
    }
    rep.presentation.relations.assign(relations.begin(), relations.end());
    rep.verdict = recognize_special(rep.presentation);
    return rep;
}

} // namespace qpw
