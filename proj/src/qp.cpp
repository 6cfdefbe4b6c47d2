#include "qpw/qp.hpp"

#include "qpw/errors.hpp"
#include "qpw/linalg.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace qpw {

namespace {

constexpr int kWide = 1 << 20;

std::string seq_str(const std::vector<int>& seq) {
    std::string s;
    for (int k : seq) s += (s.empty() ? "" : ",") + std::to_string(k);
    return s;
}

Path class_of(const Quiver& q, const Path& p) { return is_cycle(q, p) ? cycle_rotation_class(q, p) : p; }

Path rest_after(const Path& c, int p) {
    Path r;
    int m = c.length();
    for (int i = 1; i < m; ++i) r.arrows.push_back(c.arrows[(p + i) % m]);
    return r;
}

NCElement remap_potential(const NCElement& s, const std::vector<int>& old_to_new) {
    NCElement out;
    out.trust = s.trust;
    out.exact = s.exact;
    for (const auto& [p, c] : s.terms) {
        Path r = p;
        for (int& a : r.arrows) {
            a = old_to_new[a];
            if (a < 0) fail("InternalError", "potential term uses a deleted arrow");
        }
        out.add(r, c);
    }
    return out;
}

Rational qpow(const Rational& x, long e) {
    Rational r = 1;
    Rational b = e >= 0 ? x : Rational(1) / x;
    for (long i = 0; i < std::labs(e); ++i) r *= b;
    return r;
}

/// Linear system over rotation classes spanned by u * d_eta(S) * v.
struct IdealSystem {
    const Quiver& q;
    std::map<Path, int> cols;
    Echelon ech{true};
    std::vector<IdealTerm> gens;
    std::vector<NCElement> elems;

    explicit IdealSystem(const Quiver& quiver) : q(quiver) {}

    SparseVec vec(const NCElement& x) {
        SparseVec v;
        for (const auto& [p, c] : x.terms) {
            auto it = cols.find(p);
            int col = it == cols.end() ? (cols[p] = static_cast<int>(cols.size())) : it->second;
            v.emplace_back(col, c);
        }
        std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        return v;
    }

    void add(const IdealTerm& g, const NCElement& d, bool cyclic, int max_len) {
        NCElement x;
        x.trust = kWide;
        for (const auto& [p, c] : d.terms) {
            if (g.left.length() + p.length() + g.right.length() > max_len) continue;
            Path w = compose(q, compose(q, g.left, p), g.right);
            x.add(cyclic ? class_of(q, w) : w, c);
        }
        if (x.is_zero()) return;
        int idx = static_cast<int>(gens.size());
        gens.push_back(g);
        elems.push_back(x);
        ech.insert(vec(x), idx);
    }

    /// Leading-order cyclic generators at exactly the given length.
    void build_cyclic(const NCElement& s, int length) {
        for (int a = 0; a < q.arrow_count(); ++a) {
            NCElement d = cyclic_derivative(q, s, a);
            if (d.is_zero()) continue;
            NCElement dmin = d.min_part();
            int l = length - d.short_degree();
            if (l < 0) continue;
            for (const Path& u : paths_between(q, q.arrow(a).s, q.arrow(a).t, l))
                add({u, a, Path::trivial_at(q.arrow(a).t), Scalar(1)}, dmin, true, length);
        }
    }

    std::optional<SparseVec> solve(const NCElement& target) {
        SparseVec comb;
        SparseVec rem = ech.reduce(vec(target), &comb);
        if (!rem.empty()) return std::nullopt;
        return comb;
    }
};

IdealCombination combination_from(const Quiver& q, const IdealSystem& sys, const SparseVec& comb,
                                  const NCElement& s) {
    IdealCombination out;
    for (const auto& [g, c] : comb) {
        IdealTerm t = sys.gens[g];
        t.coeff = c;
        out.terms.push_back(t);
        auto it = out.u.find(t.arrow);
        if (it == out.u.end()) {
            NCElement e;
            e.trust = kWide;
            it = out.u.emplace(t.arrow, e).first;
        }
        it->second.add(t.left, c);
    }
    for (auto it = out.u.begin(); it != out.u.end();) {
        if (it->second.is_zero()) {
            it = out.u.erase(it);
            continue;
        }
        out.degree_certificate[it->first] = it->second.short_degree() + cyclic_derivative(q, s, it->first).short_degree();
        ++it;
    }
    return out;
}

std::vector<Path> induced_cycles(const Quiver& q, long cap) {
    auto cnt = q.counts();
    std::vector<std::vector<int>> out(q.n() + 1);
    for (int a = 0; a < q.arrow_count(); ++a) out[q.arrow(a).s].push_back(a);
    std::vector<Path> res;
    std::vector<int> verts, arrows;
    std::vector<bool> on(q.n() + 1, false);
    auto between = [&](int x, int y) { return cnt[x - 1][y - 1] + cnt[y - 1][x - 1]; };
    std::function<void(int, int)> dfs = [&](int start, int v) {
        for (int a : out[v]) {
            int w = q.arrow(a).t;
            if (between(v, w) != 1) continue;
            if (w == start && verts.size() >= 3) {
                int inside = 0;
                for (size_t i = 0; i < verts.size(); ++i)
                    for (size_t j = i + 1; j < verts.size(); ++j) inside += between(verts[i], verts[j]);
                if (inside == static_cast<int>(verts.size())) {
                    std::vector<int> path(arrows.rbegin(), arrows.rend());
                    path.insert(path.begin(), a);
                    res.push_back(cycle_rotation_class(q, Path::of(path)));
                    if (static_cast<long>(res.size()) > cap) fail("CapExceeded", "too many induced cycles");
                }
                continue;
            }
            if (w <= start || on[w]) continue;
            on[w] = true;
            verts.push_back(w);
            arrows.push_back(a);
            dfs(start, w);
            arrows.pop_back();
            verts.pop_back();
            on[w] = false;
        }
    };
    for (int v = 1; v <= q.n(); ++v) {
        verts = {v};
        on[v] = true;
        dfs(v, v);
        on[v] = false;
    }
    std::sort(res.begin(), res.end());
    res.erase(std::unique(res.begin(), res.end()), res.end());
    return res;
}

} // namespace

QP make_qp(Quiver q, NCElement s) {
    for (const auto& [p, c] : s.terms) {
        for (int a : p.arrows)
            if (a < 0 || a >= q.arrow_count()) fail("InvalidPotential", "term uses an unknown arrow");
        if (!is_cycle(q, p)) fail("InvalidPotential", path_str(q, p) + " is not a cycle");
    }
    NCElement normal = cyclic_normalize(q, s);
    return QP{std::move(q), std::move(normal), {}};
}

QP premutate(const QP& qp, int k) {
    const Quiver& q = qp.quiver;
    if (k < 1 || k > q.n()) fail("InvalidVertex", "vertex " + std::to_string(k) + " out of range");
    auto cnt = q.counts();
    for (int j = 0; j < q.n(); ++j)
        if (j != k - 1 && cnt[k - 1][j] && cnt[j][k - 1])
            fail("VertexOnTwoCycle", "vertex " + std::to_string(k) + " lies on a 2-cycle");
    if (cnt[k - 1][k - 1]) fail("VertexOnTwoCycle", "vertex " + std::to_string(k) + " carries a loop");

    std::vector<int> in_k, out_k;
    std::vector<Arrow> arrows;
    for (int a = 0; a < q.arrow_count(); ++a) {
        const Arrow& x = q.arrow(a);
        if (x.t == k)
            in_k.push_back(a);
        else if (x.s == k)
            out_k.push_back(a);
        else
            arrows.push_back(x);
    }
    auto comp_id = [&](int b, int a) { return "[" + q.arrow(b).id + "." + q.arrow(a).id + "]"; };
    for (int b : out_k)
        for (int a : in_k) arrows.push_back({comp_id(b, a), q.arrow(a).s, q.arrow(b).t});
    for (int a : in_k) arrows.push_back({q.arrow(a).id + "*", k, q.arrow(a).s});
    for (int b : out_k) arrows.push_back({q.arrow(b).id + "*", q.arrow(b).t, k});
    Quiver nq(q.n(), arrows);

    NCElement s;
    s.trust = qp.potential.exact ? qp.potential.trust : qp.potential.trust / 2;
    s.exact = qp.potential.exact;
    for (const auto& [c, coeff] : qp.potential.terms) {
        int m = c.length();
        int rot = -1;
        for (int r = 0; r < m && rot < 0; ++r)
            if (q.arrow(c.arrows[r]).t != k) rot = r;
        if (rot < 0) fail("VertexOnTwoCycle", "a cycle of the potential stays at vertex " + std::to_string(k));
        std::vector<int> w;
        for (int i = 0; i < m; ++i) w.push_back(c.arrows[(rot + i) % m]);
        Path p;
        for (int i = 0; i < m; ++i) {
            const Arrow& x = q.arrow(w[i]);
            if (x.s == k && i + 1 < m && q.arrow(w[i + 1]).t == k) {
                p.arrows.push_back(nq.index_of(comp_id(w[i], w[i + 1])));
                ++i;
            } else {
                p.arrows.push_back(nq.index_of(x.id));
            }
        }
        s.add(p, coeff);
    }
    for (int b : out_k)
        for (int a : in_k)
            s.add(Path::of({nq.index_of(comp_id(b, a)), nq.index_of(q.arrow(a).id + "*"),
                            nq.index_of(q.arrow(b).id + "*")}),
                  Scalar(1));
    s.truncate(s.trust);
    QP out{nq, cyclic_normalize(nq, s), qp.log};
    out.log.push_back("premutate at " + std::to_string(k));
    return out;
}

ReductionResult reduce(const QP& qp) {
    const Quiver& q = qp.quiver;
    NCElement s = cyclic_normalize(q, qp.potential);
    if (s.trust < 2) fail("TrustExceeded", "reduction needs the degree-2 part (trust >= 2)");
    ReductionResult res;
    res.equivalence = Substitution::identity(q, s.trust);
    auto step = [&](const Substitution& phi) {
        s = cyclic_normalize(q, apply_substitution(q, phi, s));
        res.equivalence = compose_substitutions(q, phi, res.equivalence);
    };
    auto coeff2 = [&](int x, int y) {
        auto it = s.terms.find(cycle_rotation_class(q, Path::of({x, y})));
        return it == s.terms.end() ? Scalar(0) : it->second;
    };
    auto linear = [&](const std::vector<std::pair<int, Scalar>>& combo) {
        NCElement e;
        e.trust = s.trust;
        for (const auto& [a, c] : combo) e.add(Path::of({a}), c);
        return e;
    };

    std::vector<int> pair_of(q.arrow_count(), -1);
    std::vector<bool> is_x(q.arrow_count(), false);
    for (int i = 1; i <= q.n(); ++i)
        for (int j = i + 1; j <= q.n(); ++j) {
            std::vector<int> xs, ys;
            for (int a = 0; a < q.arrow_count(); ++a) {
                if (q.arrow(a).s == i && q.arrow(a).t == j) xs.push_back(a);
                if (q.arrow(a).s == j && q.arrow(a).t == i) ys.push_back(a);
            }
            if (xs.empty() || ys.empty()) continue;
            PairingBlock blk;
            blk.i = i;
            blk.j = j;
            for (int x : xs) blk.rows.push_back(q.arrow(x).id);
            for (int y : ys) blk.cols.push_back(q.arrow(y).id);
            for (int x : xs) {
                blk.matrix.emplace_back();
                for (int y : ys) blk.matrix.back().push_back(coeff2(x, y));
            }
            while (true) {
                int x0 = -1, y0 = -1;
                for (int x : xs) {
                    if (pair_of[x] >= 0) continue;
                    for (int y : ys)
                        if (pair_of[y] < 0 && !coeff2(x, y).is_zero()) {
                            x0 = x;
                            y0 = y;
                            break;
                        }
                    if (x0 >= 0) break;
                }
                if (x0 < 0) break;
                Scalar c = coeff2(x0, y0);
                blk.pivots.push_back(c);
                blk.pivot_product *= c;
                Substitution phi = Substitution::identity(q, s.trust);
                std::vector<std::pair<int, Scalar>> img{{y0, Scalar(1) / c}};
                for (int y : ys)
                    if (y != y0) img.emplace_back(y, -coeff2(x0, y) / c);
                phi.set(y0, linear(img));
                step(phi);
                phi = Substitution::identity(q, s.trust);
                img = {{x0, Scalar(1)}};
                for (int x : xs)
                    if (x != x0) img.emplace_back(x, -coeff2(x, y0));
                phi.set(x0, linear(img));
                step(phi);
                pair_of[x0] = y0;
                pair_of[y0] = x0;
                is_x[x0] = true;
                res.trivial_pairs.emplace_back(q.arrow(x0).id, q.arrow(y0).id);
            }
            blk.rank = static_cast<int>(blk.pivots.size());
            res.pairings.push_back(std::move(blk));
        }

    std::set<Path> pair_terms;
    for (int a = 0; a < q.arrow_count(); ++a)
        if (is_x[a]) pair_terms.insert(cycle_rotation_class(q, Path::of({a, pair_of[a]})));
    for (int iter = 0; !pair_terms.empty(); ++iter) {
        if (iter > s.trust + 2) fail("InternalError", "reduction did not converge");
        std::vector<NCElement> corr(q.arrow_count());
        bool any = false;
        for (const auto& [p, c] : s.terms) {
            if (pair_terms.count(p)) continue;
            int pos = -1;
            for (int i = 0; i < p.length() && pos < 0; ++i)
                if (pair_of[p.arrows[i]] >= 0 && is_x[p.arrows[i]]) pos = i;
            for (int i = 0; i < p.length() && pos < 0; ++i)
                if (pair_of[p.arrows[i]] >= 0) pos = i;
            if (pos < 0) continue;
            any = true;
            int partner = pair_of[p.arrows[pos]];
            corr[partner].trust = s.trust;
            corr[partner].add(rest_after(p, pos), c);
        }
        if (!any) break;
        Substitution phi = Substitution::identity(q, s.trust);
        for (int a = 0; a < q.arrow_count(); ++a)
            if (!corr[a].is_zero()) phi.set(a, phi.images[a] - corr[a]);
        step(phi);
    }

    std::vector<int> old_to_new(q.arrow_count(), -1);
    std::vector<Arrow> kept;
    for (int a = 0; a < q.arrow_count(); ++a)
        if (pair_of[a] < 0) kept.push_back(q.arrow(a));
    Quiver nq(q.n(), kept);
    for (int a = 0; a < q.arrow_count(); ++a)
        if (pair_of[a] < 0) old_to_new[a] = nq.index_of(q.arrow(a).id);
    NCElement rest;
    rest.trust = s.trust;
    rest.exact = s.exact;
    for (const auto& [p, c] : s.terms) {
        if (pair_terms.count(p)) {
            if (!c.is_one()) fail("InternalError", "pairing term lost its unit coefficient");
            continue;
        }
        rest.add(p, c);
    }
    res.reduced = QP{nq, cyclic_normalize(nq, remap_potential(rest, old_to_new)), qp.log};
    res.two_acyclic = nq.two_acyclic();
    if (!res.trivial_pairs.empty()) {
        std::string msg = "reduce: removed";
        for (const auto& [x, y] : res.trivial_pairs) msg += " (" + x + "," + y + ")";
        res.reduced.log.push_back(msg);
    }
    return res;
}

ReductionResult qp_mutate(const QP& qp, int k) {
    ReductionResult r = reduce(premutate(qp, k));
    if (!r.two_acyclic) {
        std::string detail = "mutation at " + std::to_string(k) + " leaves a 2-cycle";
        for (const auto& b : r.pairings)
            if (b.rank < static_cast<int>(std::min(b.rows.size(), b.cols.size())) ||
                b.rows.size() != b.cols.size())
                detail += "; pairing between " + std::to_string(b.i) + " and " + std::to_string(b.j) + " has rank " +
                          std::to_string(b.rank);
        detail += " (trust " + std::to_string(r.reduced.potential.trust) + ")";
        fail("SingularPairing", detail);
    }
    r.reduced.log.push_back("mutate at " + std::to_string(k));
    return r;
}

QP restrict_qp(const QP& qp, const std::vector<int>& vertices) {
    if (!qp.potential.exact) fail("NotExact", "restriction needs an exact potential");
    Restriction r = restrict_quiver(qp.quiver, vertices);
    std::vector<int> new_vertex(qp.quiver.n() + 1, 0);
    for (size_t i = 0; i < r.vertex_map.size(); ++i) new_vertex[r.vertex_map[i]] = static_cast<int>(i) + 1;
    std::vector<int> old_to_new(qp.quiver.arrow_count(), -1);
    for (int a = 0; a < qp.quiver.arrow_count(); ++a) {
        const Arrow& x = qp.quiver.arrow(a);
        if (new_vertex[x.s] && new_vertex[x.t]) old_to_new[a] = r.quiver.index_of(x.id);
    }
    NCElement s;
    s.trust = qp.potential.trust;
    for (const auto& [p, c] : qp.potential.terms) {
        bool inside = std::all_of(p.arrows.begin(), p.arrows.end(), [&](int a) { return old_to_new[a] >= 0; });
        if (inside) s.add(p, c);
    }
    QP out{r.quiver, cyclic_normalize(r.quiver, remap_potential(s, old_to_new)), qp.log};
    out.log.push_back("restrict");
    return out;
}

std::optional<QP> specialize(const QP& qp, const Rational& t) {
    NCElement s;
    s.trust = qp.potential.trust;
    s.exact = qp.potential.exact;
    for (const auto& [p, c] : qp.potential.terms) {
        auto v = c.eval(t);
        if (!v) return std::nullopt;
        s.add(p, Scalar(*v));
    }
    QP out{qp.quiver, s, qp.log};
    out.log.push_back("specialize t = " + Scalar(t).str());
    return out;
}

NondegReport nondeg_probe(const QP& qp, int depth) {
    if (!qp.quiver.two_acyclic()) fail("NotTwoAcyclic", "non-degeneracy probing needs a 2-acyclic quiver");
    NondegReport rep;
    for (const auto& [p, c] : qp.potential.terms)
        if (!c.is_rational()) rep.symbolic = true;
    struct Node {
        QP qp;
        std::vector<int> seq;
    };
    std::vector<Node> frontier{{qp, {}}};
    std::map<Rational, std::pair<std::vector<int>, std::vector<std::vector<Scalar>>>> candidates;
    std::set<Rational> boundary;
    for (const auto& [p, c] : qp.potential.terms)
        if (!c.is_rational())
            for (const Poly& poly : {c.numerator(), c.denominator()})
                for (const Rational& r : poly.rational_roots()) boundary.insert(r);
    rep.excluded.assign(boundary.begin(), boundary.end());
    auto note_roots = [&](const Scalar& c, const std::vector<int>& seq, const PairingBlock& b) {
        if (c.is_rational()) return;
        for (const Poly& p : {c.numerator(), c.denominator()})
            for (const Rational& r : p.rational_roots())
                if (!boundary.count(r)) candidates.emplace(r, std::make_pair(seq, b.matrix));
    };
    int n = qp.quiver.n();
    for (int level = 0; level < depth; ++level) {
        std::vector<Node> next;
        for (const Node& node : frontier) {
            const NCElement& s = node.qp.potential;
            if (!s.exact && s.trust < 3)
                fail("TrustExceeded", "trust " + std::to_string(s.trust) + " cannot sustain depth " +
                                          std::to_string(depth) + " after " + seq_str(node.seq));
            for (int k = 1; k <= n; ++k) {
                if (!node.seq.empty() && node.seq.back() == k) continue;
                ++rep.nodes;
                std::vector<int> seq = node.seq;
                seq.push_back(k);
                ReductionResult r = reduce(premutate(node.qp, k));
                if (!r.two_acyclic) {
                    rep.degenerate = true;
                    rep.witness = seq;
                    rep.depth_searched = level + 1;
                    rep.trust_at_leaves = r.reduced.potential.trust;
                    rep.summary = "degenerate: mutation sequence " + seq_str(seq) + " leaves an irremovable 2-cycle";
                    return rep;
                }
                for (const auto& b : r.pairings)
                    for (const Scalar& pv : b.pivots) note_roots(pv, seq, b);
                next.push_back({std::move(r.reduced), std::move(seq)});
            }
        }
        frontier = std::move(next);
    }
    rep.depth_searched = depth;
    rep.trust_at_leaves = kInfinity;
    for (const Node& node : frontier) rep.trust_at_leaves = std::min(rep.trust_at_leaves, node.qp.potential.trust);
    if (frontier.empty() || rep.trust_at_leaves == kInfinity) rep.trust_at_leaves = qp.potential.trust;
    for (const auto& [t, found] : candidates) {
        const auto& [seq, matrix] = found;
        auto sp = specialize(qp, t);
        if (!sp) continue;
        QP cur = *sp;
        std::vector<int> prefix;
        for (int k : seq) {
            prefix.push_back(k);
            ReductionResult r = reduce(premutate(cur, k));
            if (!r.two_acyclic) {
                rep.loci.push_back({t, prefix, matrix});
                break;
            }
            cur = std::move(r.reduced);
        }
    }
    rep.summary = "no obstruction up to depth " + std::to_string(depth) + " / trust " +
                  std::to_string(rep.trust_at_leaves);
    if (!rep.loci.empty()) {
        rep.summary += "; degenerate at";
        for (const auto& l : rep.loci) rep.summary += " t = " + Scalar(l.t).str() + " (" + seq_str(l.witness) + ")";
    }
    return rep;
}

std::vector<Path> cycle_classes(const Quiver& q, int length, long cap) {
    std::set<Path> classes;
    if (length <= 0) return {};
    for (int v = 1; v <= q.n(); ++v)
        for (const Path& p : paths_between(q, v, v, length)) {
            classes.insert(cycle_rotation_class(q, p));
            if (static_cast<long>(classes.size()) > cap)
                fail("CapExceeded", "more than " + std::to_string(cap) + " cycle classes of length " +
                                        std::to_string(length));
        }
    return {classes.begin(), classes.end()};
}

std::optional<IdealCombination> express_in_jacobian_ideal(const Quiver& q, const Path& c, const NCElement& s,
                                                          int degree_bound) {
    if (!s.exact) fail("NotExact", "ideal membership needs an exact finite potential");
    int len = c.length();
    if (len > degree_bound)
        fail("DegreeBoundExceeded", "length " + std::to_string(len) + " exceeds bound " + std::to_string(degree_bound));
    IdealSystem sys(q);
    bool cyclic = is_cycle(q, c);
    if (cyclic) {
        sys.build_cyclic(s, len);
    } else {
        int sc = source(q, c), tc = target(q, c);
        for (int a = 0; a < q.arrow_count(); ++a) {
            NCElement d = cyclic_derivative(q, s, a);
            if (d.is_zero()) continue;
            NCElement dmin = d.min_part();
            int rem = len - d.short_degree();
            for (int l = 0; l <= rem; ++l)
                for (const Path& u : paths_between(q, q.arrow(a).s, tc, l))
                    for (const Path& v : paths_between(q, sc, q.arrow(a).t, rem - l)) sys.add({u, a, v, 1}, dmin, false, len);
        }
    }
    NCElement target;
    target.trust = kWide;
    target.add(class_of(q, c), Scalar(1));
    auto comb = sys.solve(target);
    if (!comb) return std::nullopt;
    NCElement check;
    check.trust = kWide;
    for (const auto& [g, coeff] : *comb) check = check + coeff * sys.elems[g];
    if (!(check.terms == target.terms)) fail("InternalError", "ideal combination does not expand to the target");
    return combination_from(q, sys, *comb, s);
}

NormalizeResult normalize_toward(const Quiver& q, const NCElement& s, const NCElement& w, int max_iter) {
    if (!s.exact) fail("NotExact", "normalization target must be exact and finite");
    NormalizeResult res;
    int trust = w.trust;
    NCElement sn = cyclic_normalize(q, s);
    NCElement cur = cyclic_normalize(q, w);
    cur.trust = trust;
    NCElement diff = cur - sn;
    if (!diff.is_zero() && diff.short_degree() <= sn.long_degree())
        fail("PreconditionUnverified", "W - S has short degree " + std::to_string(diff.short_degree()) +
                                           " not above long(S) = " + std::to_string(sn.long_degree()));
    res.composite = Substitution::identity(q, trust);
    for (res.rounds = 0;; ++res.rounds) {
        NCElement r = cur - sn;
        r.truncate(trust);
        res.residual = r;
        if (r.is_zero()) {
            res.success = true;
            return res;
        }
        int d = r.short_degree();
        res.residual_shorts.push_back(d);
        if (res.rounds >= max_iter) return res;
        IdealSystem sys(q);
        sys.build_cyclic(sn, d);
        NCElement lead = r.degree_part(d);
        lead.trust = kWide;
        auto comb = sys.solve(lead);
        if (!comb) {
            std::string detail = "residual of degree " + std::to_string(d) + " is not in the leading Jacobian span";
            fail("PreconditionUnverified", detail);
        }
        IdealCombination ic = combination_from(q, sys, *comb, sn);
        Substitution psi = Substitution::identity(q, trust);
        for (auto& [a, u] : ic.u) {
            NCElement uu = u;
            uu.trust = trust;
            psi.set(a, psi.images[a] - uu);
        }
        cur = cyclic_normalize(q, apply_substitution(q, psi, cur));
        res.composite = compose_substitutions(q, psi, res.composite);
    }
}

UniquenessCertificate uniqueness_certificate(const Quiver& q, const NCElement& s, int d, long cap) {
    UniquenessCertificate cert;
    cert.finite = s.exact;
    if (!s.exact) fail("NotExact", "the certificate needs a finite potential");
    NCElement sn = cyclic_normalize(q, s);
    cert.long_s = sn.long_degree();
    cert.bound = d;
    cert.passed = true;
    for (int len = std::max(cert.long_s + 1, 1); len <= d; ++len) {
        auto classes = cycle_classes(q, len, cap);
        if (classes.empty()) continue;
        CertificateLength cl;
        cl.length = len;
        cl.cycles = static_cast<int>(classes.size());
        IdealSystem sys(q);
        sys.build_cyclic(sn, len);
        for (const Path& c : classes) {
            NCElement t;
            t.trust = kWide;
            t.add(c, Scalar(1));
            if (sys.solve(t))
                ++cl.passed;
            else
                cl.failures.push_back(c);
        }
        if (cl.passed != cl.cycles) cert.passed = false;
        cert.lengths.push_back(std::move(cl));
    }
    cert.statement = cert.passed ? "every cycle class of length " + std::to_string(cert.long_s + 1) + ".." +
                                       std::to_string(d) +
                                       " lies in the leading Jacobian span; evidence up to this length only"
                                 : "some cycle class has no leading-order combination";
    return cert;
}

RigidityReport rigidity_probe(const QP& qp, int d, long cap) {
    const Quiver& q = qp.quiver;
    if (!qp.potential.exact) fail("NotExact", "rigidity probing needs an exact potential");
    RigidityReport rep;
    rep.bound = d;
    IdealSystem sys(q);
    for (int a = 0; a < q.arrow_count(); ++a) {
        NCElement der = cyclic_derivative(q, qp.potential, a);
        if (der.is_zero()) continue;
        for (int l = 0; l + der.short_degree() <= d; ++l)
            for (const Path& u : paths_between(q, q.arrow(a).s, q.arrow(a).t, l))
                sys.add({u, a, Path::trivial_at(q.arrow(a).t), Scalar(1)}, der, true, d);
    }
    for (int len = 1; len <= d; ++len)
        for (const Path& c : cycle_classes(q, len, cap)) {
            ++rep.classes_checked;
            NCElement t;
            t.trust = kWide;
            t.add(c, Scalar(1));
            if (!sys.solve(t)) rep.not_representable.push_back(c);
        }
    return rep;
}

CycleAppearance cycle_appearance_check(const QP& qp) {
    if (!qp.potential.exact) fail("NotExact", "cycle appearance needs an exact potential");
    CycleAppearance rep;
    NCElement s = cyclic_normalize(qp.quiver, qp.potential);
    rep.forced = induced_cycles(qp.quiver, 100000);
    for (const Path& c : rep.forced)
        if (!s.terms.count(c)) rep.missing.push_back(c);
    return rep;
}

Substitution diagonal_substitution(const Quiver& q, const std::vector<Rational>& scaling, int trust) {
    Substitution phi = Substitution::identity(q, trust);
    for (int a = 0; a < q.arrow_count(); ++a) phi.set(a, NCElement::single(Path::of({a}), Scalar(scaling[a]), trust));
    return phi;
}

std::optional<FamilyMatch> match_family(const Quiver& q, const NCElement& from, const NCElement& family) {
    NCElement f = cyclic_normalize(q, from), g = cyclic_normalize(q, family);
    if (f.terms.size() != g.terms.size()) return std::nullopt;
    int m = q.arrow_count();
    std::vector<std::vector<long>> rows;
    std::vector<Rational> rhs;
    for (const auto& [p, fc] : f.terms) {
        auto it = g.terms.find(p);
        if (it == g.terms.end() || !fc.is_rational()) return std::nullopt;
        Poly num = it->second.numerator(), den = it->second.denominator();
        auto monomial = [](const Poly& x, int& e) {
            int nz = 0;
            for (int i = 0; i <= x.degree(); ++i)
                if (x.coeff(i) != 0) {
                    ++nz;
                    e = i;
                }
            return nz == 1;
        };
        int en = 0, ed = 0;
        if (!monomial(num, en) || !monomial(den, ed)) return std::nullopt;
        Rational c = num.coeff(en) / den.coeff(ed);
        std::vector<long> row(m + 1, 0);
        for (int a : p.arrows) ++row[a];
        row[m] = -(en - ed);
        rows.push_back(row);
        rhs.push_back(c / fc.rational());
    }
    int nr = static_cast<int>(rows.size()), nc = m + 1;
    std::vector<int> pivot_col;
    int r = 0;
    for (int j = 0; j < nc && r < nr; ++j) {
        while (true) {
            int best = -1;
            for (int i = r; i < nr; ++i)
                if (rows[i][j] != 0 && (best < 0 || std::labs(rows[i][j]) < std::labs(rows[best][j]))) best = i;
            if (best < 0) break;
            std::swap(rows[best], rows[r]);
            std::swap(rhs[best], rhs[r]);
            bool done = true;
            for (int i = r + 1; i < nr; ++i) {
                if (rows[i][j] == 0) continue;
                long f2 = rows[i][j] / rows[r][j];
                for (int l = 0; l < nc; ++l) rows[i][l] -= f2 * rows[r][l];
                rhs[i] /= qpow(rhs[r], f2);
                if (rows[i][j] != 0) done = false;
            }
            if (done) break;
        }
        bool has = false;
        for (int i = r; i < nr; ++i) has = has || rows[i][j] != 0;
        if (!has) continue;
        if (rows[r][j] < 0) {
            for (auto& x : rows[r]) x = -x;
            rhs[r] = Rational(1) / rhs[r];
        }
        pivot_col.push_back(j);
        ++r;
    }
    for (int i = r; i < nr; ++i)
        if (rhs[i] != 1) return std::nullopt;
    std::vector<Rational> x(nc, Rational(1));
    for (int i = r - 1; i >= 0; --i) {
        int j = pivot_col[i];
        Rational val = rhs[i];
        for (int l = j + 1; l < nc; ++l)
            if (rows[i][l]) val /= qpow(x[l], rows[i][l]);
        auto root = rational_root(val, rows[i][j]);
        if (!root) return std::nullopt;
        x[j] = *root;
    }
    FamilyMatch fm;
    fm.t = x[m];
    fm.scaling.assign(x.begin(), x.begin() + m);
    NCElement lhs = cyclic_normalize(q, apply_substitution(q, diagonal_substitution(q, fm.scaling, kWide), f));
    for (const auto& [p, c] : g.terms) {
        auto v = c.eval(fm.t);
        auto it = lhs.terms.find(p);
        if (!v || it == lhs.terms.end() || it->second != Scalar(*v)) return std::nullopt;
    }
    return fm;
}

WeakEquivalence weak_equiv_probe(const Quiver& q, const NCElement& s1, const NCElement& s2) {
    if (!s1.exact || !s2.exact) fail("NotExact", "weak equivalence probing needs exact potentials");
    WeakEquivalence res;
    NCElement a = cyclic_normalize(q, s1), b = cyclic_normalize(q, s2);
    res.substitution = Substitution::identity(q, std::min(s1.trust, s2.trust));
    if (a.terms.size() == b.terms.size() && !a.is_zero()) {
        std::optional<Scalar> ratio;
        bool ok = true;
        for (const auto& [p, c] : a.terms) {
            auto it = b.terms.find(p);
            if (it == b.terms.end()) {
                ok = false;
                break;
            }
            Scalar r = it->second / c;
            if (ratio && *ratio != r) ok = false;
            ratio = r;
        }
        if (ok) {
            res.equivalent = true;
            res.scale = *ratio;
            res.note = "proportional potentials";
            return res;
        }
    }
    NCElement tb = Scalar::t() * b;
    if (auto fm = match_family(q, a, tb)) {
        res.equivalent = true;
        res.scale = Scalar(Rational(1) / fm->t);
        res.substitution = diagonal_substitution(q, fm->scaling, res.substitution.images[0].trust);
        res.note = "diagonal rescaling of arrows";
        return res;
    }
    if (auto fm = match_family(q, a.min_part(), Scalar::t() * b.min_part())) {
        int trust = std::min(s1.trust, s2.trust);
        Substitution diag = diagonal_substitution(q, fm->scaling, trust);
        NCElement scaled = apply_substitution(q, diag, a);
        NCElement target = Scalar(fm->t) * b;
        try {
            NormalizeResult nr = normalize_toward(q, target, scaled, 4 * trust);
            if (nr.success) {
                res.equivalent = true;
                res.scale = Scalar(Rational(1) / fm->t);
                res.substitution = compose_substitutions(q, nr.composite, diag);
                res.note = "minimal parts matched, higher terms killed up to trust " + std::to_string(trust);
                return res;
            }
        } catch (const Error&) {
        }
    }
    res.note = "no witness found; this is not a disproof (compare Jacobian corners with corner_test)";
    return res;
}

QP opposite(const QP& qp) {
    std::vector<Arrow> arrows;
    for (const Arrow& a : qp.quiver.arrows()) arrows.push_back({a.id, a.t, a.s});
    Quiver q(qp.quiver.n(), arrows);
    NCElement s;
    s.trust = qp.potential.trust;
    s.exact = qp.potential.exact;
    for (const auto& [p, c] : qp.potential.terms) {
        Path r = p;
        std::reverse(r.arrows.begin(), r.arrows.end());
        s.add(r, c);
    }
    QP out{q, cyclic_normalize(q, s), qp.log};
    out.log.push_back("opposite");
    return out;
}

std::optional<std::vector<int>> qp_isomorphism(const QP& a, const QP& b, bool allow_rescaling) {
    const Quiver& qa = a.quiver;
    const Quiver& qb = b.quiver;
    int n = qa.n();
    if (n != qb.n() || qa.arrow_count() != qb.arrow_count()) return std::nullopt;
    auto ca = qa.counts(), cb = qb.counts();
    NCElement sb = cyclic_normalize(qb, b.potential);
    std::vector<int> perm(n, 0);
    std::vector<bool> used(n + 1, false);
    std::optional<std::vector<int>> found;

    auto try_arrows = [&]() {
        std::map<std::pair<int, int>, std::vector<int>> from_a, from_b;
        for (int x = 0; x < qa.arrow_count(); ++x)
            from_a[{perm[qa.arrow(x).s - 1], perm[qa.arrow(x).t - 1]}].push_back(x);
        for (int y = 0; y < qb.arrow_count(); ++y) from_b[{qb.arrow(y).s, qb.arrow(y).t}].push_back(y);
        std::vector<std::pair<std::vector<int>, std::vector<int>>> groups;
        for (auto& [key, xs] : from_a) groups.push_back({xs, from_b[key]});
        std::vector<int> amap(qa.arrow_count(), -1);
        long budget = 100000;
        std::function<bool(size_t)> rec = [&](size_t g) -> bool {
            if (--budget < 0) return false;
            if (g == groups.size()) {
                NCElement mapped;
                mapped.trust = a.potential.trust;
                for (const auto& [p, c] : a.potential.terms) {
                    Path r = p;
                    for (int& x : r.arrows) x = amap[x];
                    mapped.add(r, c);
                }
                mapped = cyclic_normalize(qb, mapped);
                if (mapped.terms == sb.terms) return true;
                return allow_rescaling && match_family(qb, mapped, sb).has_value();
            }
            std::vector<int> ys = groups[g].second;
            std::sort(ys.begin(), ys.end());
            do {
                for (size_t i = 0; i < ys.size(); ++i) amap[groups[g].first[i]] = ys[i];
                if (rec(g + 1)) return true;
            } while (std::next_permutation(ys.begin(), ys.end()));
            return false;
        };
        return rec(0);
    };

    std::function<void(int)> assign = [&](int v) {
        if (found) return;
        if (v == n) {
            if (try_arrows()) found = perm;
            return;
        }
        for (int w = 1; w <= n && !found; ++w) {
            if (used[w]) continue;
            bool ok = ca[v][v] == cb[w - 1][w - 1];
            for (int u = 0; u < v && ok; ++u)
                ok = ca[v][u] == cb[w - 1][perm[u] - 1] && ca[u][v] == cb[perm[u] - 1][w - 1];
            if (!ok) continue;
            used[w] = true;
            perm[v] = w;
            assign(v + 1);
            used[w] = false;
        }
    };
    assign(0);
    return found;
}

} // namespace qpw
