#include "qpw/surface.hpp"

#include "qpw/errors.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace qpw {

int MarkedSurface::boundary_marks() const { return std::accumulate(marks.begin(), marks.end(), 0); }

int rank(const MarkedSurface& ms) {
    return 6 * ms.genus + 3 * ms.boundary_components() + 3 * ms.punctures + ms.boundary_marks() - 6;
}

void validate_surface(const MarkedSurface& ms) {
    if (ms.genus < 0 || ms.punctures < 0) fail("InvalidSurface", "negative genus or puncture count");
    for (int m : ms.marks)
        if (m < 1) fail("InvalidSurface", "every boundary component needs a marked point");
    bool disk = ms.genus == 0 && ms.boundary_components() == 1;
    if (disk && ms.marks[0] <= 3 && ms.punctures == 0)
        fail("ExcludedSurface", "unpunctured monogon, digon or triangle");
    if (disk && ms.marks[0] <= 2 && ms.punctures == 1) fail("ExcludedSurface", "once-punctured monogon or digon");
    if (ms.genus == 0 && ms.marks.empty() && ms.punctures < 4)
        fail("ExcludedSurface", "sphere with fewer than four punctures");
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

int corner_id(int t, int k) { return 3 * t + ((k % 3) + 3) % 3; }

struct Slots {
    // slots[a] = the two (triangle, position) occurrences of arc a
    std::vector<std::vector<std::pair<int, int>>> of;
};

Slots arc_slots(const std::vector<std::array<int, 3>>& side, int n) {
    Slots s;
    s.of.resize(n);
    for (int t = 0; t < static_cast<int>(side.size()); ++t)
        for (int k = 0; k < 3; ++k)
            if (side[t][k] >= 0) s.of[side[t][k]].push_back({t, k});
    return s;
}

std::pair<int, int> partner(const Slots& slots, int arc, std::pair<int, int> slot) {
    const auto& two = slots.of[arc];
    return two[0] == slot ? two[1] : two[0];
}

[[noreturn]] void invalid(const std::string& detail) { fail("InvalidTriangulation", detail); }

} // namespace

TriangulationInfo analyze(const Triangulation& tau) {
    int n = static_cast<int>(tau.arcs.size());
    int f = static_cast<int>(tau.triangles.size());
    std::map<std::string, int> arc_index;
    for (int a = 0; a < n; ++a)
        if (!arc_index.emplace(tau.arcs[a], a).second) invalid("duplicate arc " + tau.arcs[a]);

    TriangulationInfo info;
    info.side.resize(f);
    std::map<std::string, int> boundary_count;
    std::vector<std::pair<int, int>> boundary_slots;
    for (int t = 0; t < f; ++t)
        for (int k = 0; k < 3; ++k) {
            auto it = arc_index.find(tau.triangles[t][k]);
            if (it != arc_index.end()) {
                info.side[t][k] = it->second;
            } else {
                info.side[t][k] = -1;
                if (++boundary_count[tau.triangles[t][k]] > 1)
                    invalid("boundary segment " + tau.triangles[t][k] + " used twice");
                boundary_slots.push_back({t, k});
            }
        }
    Slots slots = arc_slots(info.side, n);
    for (int a = 0; a < n; ++a)
        if (slots.of[a].size() != 2) invalid("arc " + tau.arcs[a] + " must lie on exactly two triangle sides");

    info.self_folded.assign(f, false);
    info.pi.resize(n);
    std::iota(info.pi.begin(), info.pi.end(), 0);
    info.enclosed.assign(n, -1);
    for (int t = 0; t < f; ++t) {
        const auto& s = info.side[t];
        for (int k = 0; k < 3; ++k) {
            int a = s[k], b = s[(k + 1) % 3], c = s[(k + 2) % 3];
            if (b >= 0 && b == c) {
                if (a < 0 || a == b) invalid("degenerate self-folded triangle");
                info.self_folded[t] = true;
                info.pi[b] = a;
                info.enclosed[a] = b;
            }
        }
    }

    UnionFind uf(3 * f);
    for (int a = 0; a < n; ++a) {
        auto [t1, k1] = slots.of[a][0];
        auto [t2, k2] = slots.of[a][1];
        // side k runs from corner k-1 to corner k; glued sides run opposite ways
        uf.unite(corner_id(t1, k1 - 1), corner_id(t2, k2));
        uf.unite(corner_id(t1, k1), corner_id(t2, k2 - 1));
    }
    std::map<int, int> point_of_root;
    std::vector<int> point(3 * f);
    for (int c = 0; c < 3 * f; ++c) {
        int r = uf.find(c);
        auto it = point_of_root.emplace(r, static_cast<int>(point_of_root.size())).first;
        point[c] = it->second;
    }
    int v = static_cast<int>(point_of_root.size());

    std::vector<bool> on_boundary(v, false);
    std::map<int, int> next_on_boundary;
    for (auto [t, k] : boundary_slots) {
        int from = point[corner_id(t, k - 1)], to = point[corner_id(t, k)];
        on_boundary[from] = on_boundary[to] = true;
        if (!next_on_boundary.emplace(from, to).second) invalid("two boundary segments leave one marked point");
    }
    std::vector<int> marks;
    std::set<int> seen;
    for (auto& [start, nxt] : next_on_boundary) {
        if (seen.count(start)) continue;
        int len = 0, cur = start;
        do {
            seen.insert(cur);
            auto it = next_on_boundary.find(cur);
            if (it == next_on_boundary.end()) invalid("boundary does not close up");
            cur = it->second;
            ++len;
        } while (cur != start && len <= v);
        if (cur != start) invalid("boundary does not close up");
        marks.push_back(len);
    }
    std::sort(marks.begin(), marks.end());
    int c = static_cast<int>(std::count(on_boundary.begin(), on_boundary.end(), true));
    int edges = n + static_cast<int>(boundary_slots.size());
    int chi = v - edges + f;
    int b = static_cast<int>(marks.size());
    if ((2 - b - chi) % 2 != 0 || 2 - b - chi < 0) invalid("Euler characteristic does not fit an orientable surface");
    info.computed.genus = (2 - b - chi) / 2;
    info.computed.marks = marks;
    info.computed.punctures = v - c;

    MarkedSurface declared = tau.surface;
    std::sort(declared.marks.begin(), declared.marks.end());
    if (!(declared == info.computed))
        invalid("gluing gives genus " + std::to_string(info.computed.genus) + ", " + std::to_string(b) +
                " boundary components, " + std::to_string(info.computed.punctures) + " punctures");
    validate_surface(tau.surface);
    if (n != rank(tau.surface)) invalid("arc count differs from the rank");

    info.is_loop.assign(n, false);
    std::vector<int> ends(v, 0);
    for (int a = 0; a < n; ++a) {
        auto [t, k] = slots.of[a][0];
        int p0 = point[corner_id(t, k - 1)], p1 = point[corner_id(t, k)];
        info.is_loop[a] = p0 == p1;
        ++ends[p0];
        ++ends[p1];
    }

    std::map<int, int> puncture_of_point;
    for (int cid = 0; cid < 3 * f; ++cid) {
        int p = point[cid];
        if (on_boundary[p] || puncture_of_point.count(p)) continue;
        Puncture pu;
        pu.valency = ends[p];
        int t = cid / 3, k = cid % 3;
        do {
            pu.corners.push_back({t, k});
            int k1 = (k + 1) % 3;
            int arc = info.side[t][k1];
            if (arc < 0) invalid("puncture touches the boundary");
            auto [t2, m] = partner(slots, arc, {t, k1});
            t = t2;
            k = m;
        } while (corner_id(t, k) != cid && static_cast<int>(pu.corners.size()) <= 3 * f);
        puncture_of_point[p] = static_cast<int>(info.punctures.size());
        info.punctures.push_back(std::move(pu));
    }
    for (int t = 0; t < f; ++t) {
        if (!info.self_folded[t]) continue;
        for (int k = 0; k < 3; ++k) {
            const auto& s = info.side[t];
            if (s[(k + 1) % 3] == s[(k + 2) % 3])
                info.inner_puncture[s[(k + 1) % 3]] = puncture_of_point.at(point[corner_id(t, k + 1)]);
        }
    }
    return info;
}

namespace {

std::vector<int> lifts(const TriangulationInfo& info, int a) {
    std::vector<int> out{a};
    if (info.enclosed[a] >= 0) out.push_back(info.enclosed[a]);
    return out;
}

} // namespace

BMatrix adjacency_matrix(const Triangulation& tau) {
    TriangulationInfo info = analyze(tau);
    int n = static_cast<int>(tau.arcs.size());
    BMatrix b(n, std::vector<int>(n, 0));
    for (size_t t = 0; t < info.side.size(); ++t) {
        if (info.self_folded[t]) continue;
        for (int k = 0; k < 3; ++k) {
            int j = info.side[t][k], i = info.side[t][(k + 1) % 3];
            if (i < 0 || j < 0) continue;
            for (int ii : lifts(info, i))
                for (int jj : lifts(info, j)) {
                    ++b[ii][jj];
                    --b[jj][ii];
                }
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (std::abs(b[i][j]) > 2) invalid("adjacency entry exceeds 2");
    return b;
}

Quiver adjacency_quiver(const Triangulation& tau) { return from_b_matrix(adjacency_matrix(tau)); }

bool is_folded_side(const Triangulation& tau, const std::string& arc) {
    for (const auto& tri : tau.triangles)
        for (int k = 0; k < 3; ++k)
            if (tri[k] == arc && tri[(k + 1) % 3] == arc) return true;
    return false;
}

Triangulation flip(const Triangulation& tau, const std::string& arc) {
    if (std::find(tau.arcs.begin(), tau.arcs.end(), arc) == tau.arcs.end())
        fail("UnknownArc", "no arc named " + arc);
    if (is_folded_side(tau, arc)) fail("UnflippableFoldedSide", "arc " + arc + " is the folded side of a self-folded triangle");
    std::vector<std::pair<int, int>> where;
    for (int t = 0; t < static_cast<int>(tau.triangles.size()); ++t)
        for (int k = 0; k < 3; ++k)
            if (tau.triangles[t][k] == arc) where.push_back({t, k});
    if (where.size() != 2) invalid("arc " + arc + " must lie on exactly two triangle sides");
    auto rotated = [&](std::pair<int, int> w) {
        const auto& tri = tau.triangles[w.first];
        return std::array<std::string, 3>{tri[w.second], tri[(w.second + 1) % 3], tri[(w.second + 2) % 3]};
    };
    auto d1 = rotated(where[0]), d2 = rotated(where[1]);
    const std::string &x = d1[1], &y = d1[2], &z = d2[1], &w = d2[2];
    Triangulation out = tau;
    out.triangles[where[0].first] = {arc, y, z};
    out.triangles[where[1].first] = {arc, w, x};
    return out;
}

QP triangulation_potential(const Triangulation& tau) {
    TriangulationInfo info = analyze(tau);
    return triangulation_potential(tau, std::vector<Scalar>(info.punctures.size(), Scalar(1)));
}

QP triangulation_potential(const Triangulation& tau, const std::vector<Scalar>& x) {
    TriangulationInfo info = analyze(tau);
    if (x.size() != info.punctures.size())
        fail("InvalidArgument", "need one scalar per puncture (" + std::to_string(info.punctures.size()) + ")");
    for (size_t p = 0; p < x.size(); ++p)
        if (x[p].is_zero() && info.punctures[p].valency < 3)
            fail("InvalidArgument", "zero puncture scalars need valency at least 3");
    int n = static_cast<int>(tau.arcs.size());
    int f = static_cast<int>(tau.triangles.size());

    auto arrow_id = [&](int t, int j, int i) { return tau.arcs[j] + ">" + tau.arcs[i] + "@" + std::to_string(t + 1); };
    std::vector<Arrow> arrows;
    for (int t = 0; t < f; ++t) {
        if (info.self_folded[t]) continue;
        for (int k = 0; k < 3; ++k) {
            int j = info.side[t][k], i = info.side[t][(k + 1) % 3];
            if (i < 0 || j < 0) continue;
            for (int ii : lifts(info, i))
                for (int jj : lifts(info, j)) arrows.push_back({arrow_id(t, jj, ii), jj + 1, ii + 1});
        }
    }
    Quiver q(n, std::move(arrows));
    auto arrow_at = [&](int t, int j, int i) { return q.index_of(arrow_id(t, j, i)); };
    // Cycle through the sides of t with some sides replaced by folded ones.
    auto triangle_cycle = [&](int t, const std::array<int, 3>& s) {
        std::vector<int> traversal;
        for (int k = 0; k < 3; ++k) traversal.push_back(arrow_at(t, s[k], s[(k + 1) % 3]));
        return Path::of({traversal.rbegin(), traversal.rend()});
    };

    NCElement pot;
    for (int t = 0; t < f; ++t) {
        if (info.self_folded[t]) continue;
        const auto& s = info.side[t];
        if (s[0] < 0 || s[1] < 0 || s[2] < 0) continue;
        pot.add(triangle_cycle(t, s), Scalar(1));
        std::vector<int> loops;
        for (int k = 0; k < 3; ++k)
            if (info.enclosed[s[k]] >= 0) loops.push_back(k);
        if (loops.size() == 2) {
            std::array<int, 3> folded = s;
            Scalar c(1);
            for (int k : loops) {
                folded[k] = info.enclosed[s[k]];
                c = c / x[info.inner_puncture.at(folded[k])];
            }
            pot.add(triangle_cycle(t, folded), c);
        }
    }
    for (size_t p = 0; p < info.punctures.size(); ++p) {
        const Puncture& pu = info.punctures[p];
        if (pu.valency == 1) {
            auto [st, sk] = pu.corners.front();
            const auto& sf = info.side[st];
            int folded = sf[(sk + 1) % 3];
            int loop = info.pi[folded];
            for (int t = 0; t < f; ++t) {
                if (info.self_folded[t]) continue;
                const auto& s = info.side[t];
                for (int k = 0; k < 3; ++k) {
                    if (s[k] != loop) continue;
                    if (s[(k + 1) % 3] < 0 || s[(k + 2) % 3] < 0) continue;
                    std::array<int, 3> alt = s;
                    alt[k] = folded;
                    pot.add(triangle_cycle(t, alt), Scalar(-1) / x[p]);
                }
            }
            continue;
        }
        auto visible = [&](int a) { return info.enclosed[a] >= 0 ? info.enclosed[a] : a; };
        std::vector<int> traversal;
        for (auto [t, k] : pu.corners) {
            if (info.self_folded[t]) continue;
            int j = visible(info.side[t][k]), i = visible(info.side[t][(k + 1) % 3]);
            traversal.push_back(arrow_at(t, j, i));
        }
        if (!traversal.empty() && !x[p].is_zero()) pot.add(Path::of({traversal.rbegin(), traversal.rend()}), x[p]);
    }

    QP unreduced = make_qp(q, pot);
    if (q.two_acyclic()) return unreduced;
    ReductionResult r = reduce(unreduced);
    if (!r.two_acyclic) fail("SingularPairing", "reduction of the unreduced potential left a 2-cycle");
    return r.reduced;
}

std::string block_name(BlockType t) {
    switch (t) {
    case BlockType::I: return "I";
    case BlockType::II: return "II";
    case BlockType::IIIa: return "IIIa";
    case BlockType::IIIb: return "IIIb";
    case BlockType::IV: return "IV";
    case BlockType::V: return "V";
    }
    return "?";
}

BlockType parse_block(const std::string& s) {
    for (BlockType t : {BlockType::I, BlockType::II, BlockType::IIIa, BlockType::IIIb, BlockType::IV, BlockType::V})
        if (block_name(t) == s) return t;
    fail("GlueInvalid", "unknown block type " + s);
}

namespace {

struct BlockShape {
    int size;
    int whites;  // white vertices come first in the local order
    std::vector<std::pair<int, int>> arrows;
};

const BlockShape& shape(BlockType t) {
    static const std::map<BlockType, BlockShape> shapes = {
        {BlockType::I, {2, 2, {{0, 1}}}},
        {BlockType::II, {3, 3, {{0, 1}, {1, 2}, {2, 0}}}},
        {BlockType::IIIa, {3, 1, {{1, 0}, {2, 0}}}},
        {BlockType::IIIb, {3, 1, {{0, 1}, {0, 2}}}},
        {BlockType::IV, {4, 2, {{0, 2}, {2, 1}, {0, 3}, {3, 1}, {1, 0}}}},
        {BlockType::V, {5, 1, {{1, 0}, {2, 1}, {2, 4}, {0, 2}, {0, 3}, {3, 4}, {3, 1}, {4, 0}}}},
    };
    return shapes.at(t);
}

} // namespace

bool is_white(BlockType t, int local) { return local < shape(t).whites; }

int GlueSpec::vertex_count() const {
    int n = 0;
    for (const Block& b : blocks)
        for (int v : b.vertices) n = std::max(n, v);
    return n;
}

namespace {

void check_glue(const GlueSpec& spec) {
    int n = spec.vertex_count();
    std::vector<std::vector<std::pair<int, int>>> uses(n + 1);
    for (int bi = 0; bi < static_cast<int>(spec.blocks.size()); ++bi) {
        const Block& b = spec.blocks[bi];
        if (static_cast<int>(b.vertices.size()) != shape(b.type).size)
            fail("GlueInvalid", "block " + std::to_string(bi + 1) + " of type " + block_name(b.type) + " needs " +
                                    std::to_string(shape(b.type).size) + " vertices");
        for (int l = 0; l < static_cast<int>(b.vertices.size()); ++l) {
            if (b.vertices[l] < 1) fail("GlueInvalid", "vertex labels start at 1");
            uses[b.vertices[l]].push_back({bi, l});
        }
    }
    for (int v = 1; v <= n; ++v) {
        const auto& u = uses[v];
        if (u.size() > 2) fail("GlueInvalid", "vertex " + std::to_string(v) + " glues more than two block vertices");
        if (u.size() == 2) {
            for (auto [bi, l] : u)
                if (!is_white(spec.blocks[bi].type, l))
                    fail("GlueInvalid", "vertex " + std::to_string(v) + " glues a black vertex");
            if (u[0].first == u[1].first)
                fail("GlueInvalid", "vertex " + std::to_string(v) + " glues a block to itself");
        }
    }
}

BMatrix glue_matrix(const GlueSpec& spec) {
    int n = spec.vertex_count();
    BMatrix b(n, std::vector<int>(n, 0));
    for (const Block& blk : spec.blocks)
        for (auto [s, t] : shape(blk.type).arrows) {
            int i = blk.vertices[t] - 1, j = blk.vertices[s] - 1;
            ++b[i][j];
            --b[j][i];
        }
    return b;
}

} // namespace

Quiver block_glue(const GlueSpec& spec) {
    check_glue(spec);
    return from_b_matrix(glue_matrix(spec));
}

GlueSpec glue_from_triangulation(const Triangulation& tau) {
    TriangulationInfo info = analyze(tau);
    GlueSpec spec;
    for (size_t t = 0; t < info.side.size(); ++t) {
        if (info.self_folded[t]) continue;
        const auto& s = info.side[t];
        std::vector<int> arcs, loops;
        for (int k = 0; k < 3; ++k) {
            if (s[k] < 0) continue;
            arcs.push_back(k);
            if (info.enclosed[s[k]] >= 0) loops.push_back(k);
        }
        auto label = [&](int k) { return s[((k % 3) + 3) % 3] + 1; };
        auto folded = [&](int k) { return info.enclosed[s[k]] + 1; };
        if (arcs.size() == 3 && loops.empty()) {
            spec.blocks.push_back({BlockType::II, {label(0), label(1), label(2)}});
        } else if (arcs.size() == 2 && loops.empty()) {
            int k = s[(arcs[0] + 1) % 3] >= 0 && (arcs[0] + 1) % 3 == arcs[1] ? arcs[0] : arcs[1];
            spec.blocks.push_back({BlockType::I, {label(k), label(k + 1)}});
        } else if (arcs.size() == 2 && loops.size() == 1) {
            int l = loops[0];
            int w = arcs[0] == l ? arcs[1] : arcs[0];
            BlockType type = (w + 1) % 3 == l ? BlockType::IIIb : BlockType::IIIa;
            spec.blocks.push_back({type, {label(w), label(l), folded(l)}});
        } else if (arcs.size() == 3 && loops.size() == 1) {
            int l = loops[0];
            spec.blocks.push_back({BlockType::IV, {label(l - 1), label(l + 1), label(l), folded(l)}});
        } else if (arcs.size() == 3 && loops.size() == 2) {
            int w = 3 - loops[0] - loops[1];
            int kk = (w + 1) % 3, ll = (w + 2) % 3;
            spec.blocks.push_back({BlockType::V, {label(w), label(ll), label(kk), folded(kk), folded(ll)}});
        } else if (arcs.size() <= 1) {
            continue;
        } else {
            fail("UnsupportedBlock", "triangle " + std::to_string(t + 1) + " does not give one of the six blocks");
        }
    }
    return spec;
}

GluePredicates triangulation_predicates(const GlueSpec& spec) {
    check_glue(spec);
    GluePredicates r;
    auto set_fail = [&](const std::string& clause, const std::string& detail) {
        if (r.violated.empty()) {
            r.violated = clause;
            r.detail = detail;
        }
    };
    int nb = static_cast<int>(spec.blocks.size());
    for (int i = 0; i < nb; ++i)
        for (int j = i + 1; j < nb; ++j) {
            int shared = 0;
            for (int l = 0; l < static_cast<int>(spec.blocks[i].vertices.size()); ++l) {
                if (!is_white(spec.blocks[i].type, l)) continue;
                for (int m = 0; m < static_cast<int>(spec.blocks[j].vertices.size()); ++m)
                    if (is_white(spec.blocks[j].type, m) && spec.blocks[i].vertices[l] == spec.blocks[j].vertices[m])
                        ++shared;
            }
            if (shared > 1)
                set_fail("gl3", "blocks " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " share " +
                                    std::to_string(shared) + " white vertices");
        }
    if (r.violated.empty()) {
        auto c = block_glue(spec).counts();
        int n = spec.vertex_count();
        for (int a = 0; a < n && r.violated.empty(); ++a)
            for (int b = 0; b < n && r.violated.empty(); ++b)
                for (int d = 0; d < n && r.violated.empty(); ++d) {
                    if (!(a < b && a < d) || !c[a][b] || !c[b][d] || !c[d][a]) continue;
                    bool inside = false;
                    for (const Block& blk : spec.blocks) {
                        const auto& vs = blk.vertices;
                        auto has = [&](int x) { return std::find(vs.begin(), vs.end(), x + 1) != vs.end(); };
                        if (has(a) && has(b) && has(d)) inside = true;
                    }
                    if (!inside)
                        set_fail("gl4", "3-cycle through " + std::to_string(a + 1) + ", " + std::to_string(b + 1) +
                                            ", " + std::to_string(d + 1) + " lies in no block");
                }
    }
    for (int i = 0; i < nb; ++i)
        if (spec.blocks[i].type == BlockType::V) set_fail("gl5", "block " + std::to_string(i + 1) + " has type V");
    bool sg = r.violated.empty();
    for (int i = 0; i < nb; ++i) {
        BlockType t = spec.blocks[i].type;
        if (t != BlockType::I && t != BlockType::II)
            set_fail("gl6", "block " + std::to_string(i + 1) + " has type " + block_name(t));
    }
    r.skewed_gentle = sg;
    r.gentle = r.violated.empty();
    return r;
}

FGMaps fg_maps(const Triangulation& tau) {
    TriangulationInfo info = analyze(tau);
    if (info.computed.boundary_components() > 0) fail("HypothesesUnmet", "the surface has boundary");
    for (size_t a = 0; a < tau.arcs.size(); ++a)
        if (info.is_loop[a]) fail("HypothesesUnmet", "arc " + tau.arcs[a] + " is a loop");
    for (const Puncture& p : info.punctures)
        if (p.valency < 4) fail("HypothesesUnmet", "a puncture has valency " + std::to_string(p.valency));
    QP qp = triangulation_potential(tau);
    if (multiplicity_profile(qp.quiver).has_double) fail("HypothesesUnmet", "Q(tau) has double arrows");

    FGMaps m;
    m.quiver = qp.quiver;
    const Quiver& q = m.quiver;
    int f = static_cast<int>(tau.triangles.size());
    auto arrow_at = [&](int t, int k) {
        k %= 3;
        int j = info.side[t][k], i = info.side[t][(k + 1) % 3];
        return q.index_of(tau.arcs[j] + ">" + tau.arcs[i] + "@" + std::to_string(t + 1));
    };
    m.f.assign(q.arrow_count(), -1);
    m.g.assign(q.arrow_count(), -1);
    for (int t = 0; t < f; ++t)
        for (int k = 0; k < 3; ++k) m.f[arrow_at(t, k)] = arrow_at(t, k + 1);
    for (const Puncture& p : info.punctures) {
        int len = static_cast<int>(p.corners.size());
        for (int i = 0; i < len; ++i) {
            auto [t, k] = p.corners[i];
            auto [t2, k2] = p.corners[(i + 1) % len];
            m.g[arrow_at(t, k)] = arrow_at(t2, k2);
        }
    }
    auto orbits = [&](const std::vector<int>& perm) {
        std::vector<bool> seen(perm.size(), false);
        int count = 0;
        for (size_t a = 0; a < perm.size(); ++a) {
            if (seen[a]) continue;
            ++count;
            for (int b = static_cast<int>(a); !seen[b]; b = perm[b]) seen[b] = true;
        }
        return count;
    };
    m.f_orbits = orbits(m.f);
    m.g_orbits = orbits(m.g);
    return m;
}

std::vector<Path> g_orbit_cycles(const FGMaps& m) {
    std::vector<Path> out;
    std::vector<bool> seen(m.g.size(), false);
    for (size_t a = 0; a < m.g.size(); ++a) {
        if (seen[a]) continue;
        std::vector<int> traversal;
        for (int b = static_cast<int>(a); !seen[b]; b = m.g[b]) {
            seen[b] = true;
            traversal.push_back(b);
        }
        out.push_back(Path::of({traversal.rbegin(), traversal.rend()}));
    }
    return out;
}

CycleType cycle_type(const FGMaps& m, const Path& c) {
    const Quiver& q = m.quiver;
    if (c.trivial() || !is_cycle(q, c)) fail("NotACycle", "input is not a nontrivial cycle");
    int r = c.length();
    CycleType out;
    int fs = 0, gs = 0;
    for (int l = 0; l < r; ++l) {
        int cur = c.arrows[l], nxt = c.arrows[(l + 1) % r];
        if (m.f[nxt] == cur) {
            out.word += 'f';
            ++fs;
        } else if (m.g[nxt] == cur) {
            out.word += 'g';
            ++gs;
        } else {
            fail("NotACycle", "consecutive arrows are not related by f or g");
        }
    }
    if (gs == 0 || fs == 0) {
        int period = 3;
        if (fs == 0) {
            period = 1;
            for (int b = m.g[c.arrows[0]]; b != c.arrows[0]; b = m.g[b]) ++period;
        }
        out.n = r / period;
        out.kind = out.n == 1 ? "S" : (fs == 0 ? "II" : "I");
        return out;
    }
    out.kind = "III";
    return out;
}

namespace {

Triangulation make(MarkedSurface ms, std::vector<std::string> arcs, std::vector<std::array<std::string, 3>> tris) {
    Triangulation t{std::move(ms), std::move(arcs), std::move(tris)};
    analyze(t);
    return t;
}

std::string num(const std::string& prefix, int i) { return prefix + std::to_string(i); }

Triangulation four_g_gon(int g) {
    if (g < 2) fail("InvalidArgument", "the 4g-gon preset needs g >= 2");
    int m = 4 * g;
    auto side = [&](int j) {
        if (j == 0) j = m;
        int r = (j - 1) % 4;
        return num("s", r >= 2 ? j - 2 : j);
    };
    std::vector<std::string> arcs;
    for (int j = 1; j <= m; ++j)
        if ((j - 1) % 4 < 2) arcs.push_back(num("s", j));
    for (int t = 1; t <= 2 * g; ++t) arcs.push_back(num("d", t));
    for (int t = 2; t <= 2 * g - 2; ++t) arcs.push_back(num("e", t));
    std::vector<std::array<std::string, 3>> tris;
    for (int t = 1; t <= 2 * g; ++t) tris.push_back({side(2 * t - 2), side(2 * t - 1), num("d", t)});
    for (int t = 2; t <= 2 * g - 1; ++t)
        tris.push_back({t == 2 ? num("d", 2) : num("e", t - 1), num("d", t + 1), t == 2 * g - 1 ? num("d", 1) : num("e", t)});
    return make({g, {}, 1}, arcs, tris);
}

Triangulation ngon_fan(int n) {
    std::vector<std::string> arcs;
    for (int k = 2; k <= n - 2; ++k) arcs.push_back(num("d", k));
    std::vector<std::array<std::string, 3>> tris;
    for (int k = 1; k <= n - 2; ++k)
        tris.push_back({k == 1 ? "B0" : num("d", k), num("B", k), k + 1 == n - 1 ? num("B", n - 1) : num("d", k + 1)});
    return make({0, {n}, 0}, arcs, tris);
}

Triangulation annulus(int c1, int c2) {
    if (c1 < 1 || c2 < 1) fail("InvalidArgument", "annulus needs marked points on both boundaries");
    std::vector<std::string> arcs{"x0"};
    for (int k = 1; k <= c1; ++k) arcs.push_back(num("u", k));
    for (int m = 1; m < c2; ++m) arcs.push_back(num("v", m));
    std::vector<std::array<std::string, 3>> tris;
    for (int k = 0; k < c1; ++k) tris.push_back({num("O", k), num("u", k + 1), k == 0 ? "x0" : num("u", k)});
    for (int m = 0; m < c2; ++m)
        tris.push_back({m + 1 == c2 ? "x0" : num("v", m + 1), num("I", m), m == 0 ? num("u", c1) : num("v", m)});
    return make({0, {c1, c2}, 0}, arcs, tris);
}

Triangulation triangle_skewed(int t) {
    if (t < 1) fail("InvalidArgument", "need at least one puncture");
    Triangulation tau;
    tau.surface = {0, {3}, t};
    for (int i = 1; i <= t; ++i) tau.arcs.push_back(num("b", i));
    for (int i = 1; i <= t; ++i) tau.arcs.push_back(num("c", i));
    for (int i = 1; i <= t; ++i) tau.arcs.push_back(num("d", i));
    tau.triangles = {{"A1", "A2", "b1"}};
    for (int i = 1; i <= t; ++i) {
        tau.triangles.push_back({num("b", i), i == t ? "A3" : num("b", i + 1), num("d", i)});
        tau.triangles.push_back({num("d", i), num("c", i), num("c", i)});
    }
    return make(tau.surface, tau.arcs, tau.triangles);
}

} // namespace

std::vector<std::string> preset_names() {
    return {"torus-closed-1p", "torus-boundary-1m", "torus-3p",       "sphere-4p-tetrahedron", "sphere-5p",
            "4g-gon",          "ngon-fan",          "annulus",        "triangle-3p-skewed",    "digon-skewed"};
}

Triangulation preset(const std::string& name, const PresetParams& params) {
    if (name == "torus-closed-1p") return make({1, {}, 1}, {"1", "2", "3"}, {{"1", "2", "3"}, {"1", "2", "3"}});
    if (name == "torus-boundary-1m")
        return make({1, {1}, 0}, {"1", "2", "3", "4"}, {{"1", "2", "3"}, {"1", "2", "4"}, {"3", "4", "B"}});
    if (name == "torus-3p") {
        std::vector<std::string> arcs;
        for (const char* d : {"g", "h", "v"})
            for (int c = 0; c < 3; ++c) arcs.push_back(num(d, c));
        std::vector<std::array<std::string, 3>> tris;
        for (int c = 0; c < 3; ++c) {
            tris.push_back({num("g", c), num("v", (c + 1) % 3), num("h", c)});
            tris.push_back({num("v", c), num("h", (c + 1) % 3), num("g", c)});
        }
        return make({1, {}, 3}, arcs, tris);
    }
    if (name == "sphere-4p-tetrahedron")
        return make({0, {}, 4}, {"1", "2", "3", "4", "5", "6"},
                    {{"1", "3", "5"}, {"5", "2", "4"}, {"4", "6", "1"}, {"6", "2", "3"}});
    if (name == "sphere-5p") {
        // meridians m1..m3 between the poles; lune i holds a puncture joined to both poles
        std::vector<std::string> arcs;
        for (const char* d : {"a", "b", "m"})
            for (int i = 1; i <= 3; ++i) arcs.push_back(num(d, i));
        std::vector<std::array<std::string, 3>> tris;
        for (int i = 1; i <= 3; ++i) {
            tris.push_back({num("a", i), num("b", i), num("m", i)});
            tris.push_back({num("m", i % 3 + 1), num("b", i), num("a", i)});
        }
        return make({0, {}, 5}, arcs, tris);
    }
    if (name == "4g-gon") return four_g_gon(params.g);
    if (name == "ngon-fan") return ngon_fan(params.n);
    if (name == "annulus") return annulus(params.c1, params.c2);
    if (name == "triangle-3p-skewed") return triangle_skewed(params.t);
    if (name == "digon-skewed") {
        int t = std::max(params.t, 0);
        std::vector<std::string> arcs;
        for (int i = 1; i <= t; ++i) arcs.push_back(num("b", i));
        for (int i = 0; i <= t; ++i) arcs.push_back(num("c", i));
        for (int i = 0; i <= t; ++i) arcs.push_back(num("d", i));
        std::vector<std::array<std::string, 3>> tris;
        for (int i = 0; i <= t; ++i) {
            tris.push_back({i == 0 ? "E" : num("b", i), i == t ? "A" : num("b", i + 1), num("d", i)});
            tris.push_back({num("d", i), num("c", i), num("c", i)});
        }
        return make({0, {2}, t + 1}, arcs, tris);
    }
    fail("UnknownPreset", "no preset named " + name);
}

} // namespace qpw
