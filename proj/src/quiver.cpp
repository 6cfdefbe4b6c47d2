#include "qpw/quiver.hpp"

#include "qpw/errors.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace qpw {

Quiver::Quiver(int n, std::vector<Arrow> arrows) : n_(n), arrows_(std::move(arrows)) {
    if (n < 0) fail("InvalidQuiver", "negative vertex count");
    std::sort(arrows_.begin(), arrows_.end(), [](const Arrow& a, const Arrow& b) { return a.id < b.id; });
    for (size_t i = 0; i < arrows_.size(); ++i) {
        const Arrow& a = arrows_[i];
        if (a.s < 1 || a.s > n || a.t < 1 || a.t > n)
            fail("InvalidQuiver", "arrow " + a.id + " has an endpoint outside 1.." + std::to_string(n));
        if (i > 0 && arrows_[i - 1].id == a.id) fail("InvalidQuiver", "duplicate arrow id " + a.id);
    }
}

int Quiver::find(const std::string& id) const {
    auto it = std::lower_bound(arrows_.begin(), arrows_.end(), id,
                               [](const Arrow& a, const std::string& x) { return a.id < x; });
    if (it == arrows_.end() || it->id != id) return -1;
    return static_cast<int>(it - arrows_.begin());
}

int Quiver::index_of(const std::string& id) const {
    int i = find(id);
    if (i < 0) fail("UnknownArrow", "no arrow named " + id);
    return i;
}

std::vector<std::vector<int>> Quiver::counts() const {
    std::vector<std::vector<int>> c(n_, std::vector<int>(n_, 0));
    for (const Arrow& a : arrows_) ++c[a.s - 1][a.t - 1];
    return c;
}

bool Quiver::two_acyclic() const {
    auto c = counts();
    for (int i = 0; i < n_; ++i) {
        if (c[i][i]) return false;
        for (int j = i + 1; j < n_; ++j)
            if (c[i][j] && c[j][i]) return false;
    }
    return true;
}

BMatrix to_b_matrix(const Quiver& q) {
    if (!q.two_acyclic()) fail("NotTwoAcyclic", "quiver has a loop or a 2-cycle");
    auto c = q.counts();
    BMatrix b(q.n(), std::vector<int>(q.n(), 0));
    for (int i = 0; i < q.n(); ++i)
        for (int j = 0; j < q.n(); ++j) b[i][j] = c[j][i] - c[i][j];
    return b;
}

Quiver from_b_matrix(const BMatrix& b) {
    int n = static_cast<int>(b.size());
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(b[i].size()) != n) fail("NotSkewSymmetric", "matrix is not square");
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (b[i][j] != -b[j][i]) fail("NotSkewSymmetric", "b_ij != -b_ji");
    std::vector<Arrow> arrows;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int m = 1; m <= b[i][j]; ++m)
                arrows.push_back({"a" + std::to_string(j + 1) + "_" + std::to_string(i + 1) + "_" + std::to_string(m),
                                  j + 1, i + 1});
    return Quiver(n, std::move(arrows));
}

BMatrix mutate_matrix(const BMatrix& b, int k) {
    int n = static_cast<int>(b.size());
    --k;
    BMatrix r = b;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == k || j == k) {
                r[i][j] = -b[i][j];
            } else {
                int sgn = (b[i][k] > 0) - (b[i][k] < 0);
                r[i][j] = b[i][j] + sgn * std::max(0, b[i][k] * b[k][j]);
            }
        }
    return r;
}

Quiver mutate(const Quiver& q, int k) {
    if (k < 1 || k > q.n()) fail("InvalidVertex", "vertex " + std::to_string(k) + " out of range");
    if (!q.two_acyclic()) fail("NotTwoAcyclic", "mutation needs a 2-acyclic quiver");
    std::vector<Arrow> out;
    std::vector<const Arrow*> in_k, out_k;
    for (const Arrow& a : q.arrows()) {
        if (a.t == k)
            in_k.push_back(&a);
        else if (a.s == k)
            out_k.push_back(&a);
        else
            out.push_back(a);
    }
    for (const Arrow* beta : out_k)
        for (const Arrow* alpha : in_k) out.push_back({"[" + beta->id + "." + alpha->id + "]", alpha->s, beta->t});
    for (const Arrow* alpha : in_k) out.push_back({alpha->id + "*", k, alpha->s});
    for (const Arrow* beta : out_k) out.push_back({beta->id + "*", beta->t, k});

    std::sort(out.begin(), out.end(), [](const Arrow& a, const Arrow& b) { return a.id < b.id; });
    std::map<std::pair<int, int>, std::vector<size_t>> by_pair;
    for (size_t i = 0; i < out.size(); ++i) by_pair[{out[i].s, out[i].t}].push_back(i);
    std::vector<bool> drop(out.size(), false);
    for (auto& [st, fwd] : by_pair) {
        if (st.first >= st.second) continue;
        auto it = by_pair.find({st.second, st.first});
        if (it == by_pair.end()) continue;
        size_t m = std::min(fwd.size(), it->second.size());
        for (size_t i = 0; i < m; ++i) {
            drop[fwd[i]] = true;
            drop[it->second[i]] = true;
        }
    }
    std::vector<Arrow> kept;
    for (size_t i = 0; i < out.size(); ++i)
        if (!drop[i]) kept.push_back(out[i]);
    return Quiver(q.n(), std::move(kept));
}

MultiplicityProfile multiplicity_profile(const Quiver& q) {
    MultiplicityProfile p;
    auto c = q.counts();
    for (int i = 0; i < q.n(); ++i)
        for (int j = 0; j < q.n(); ++j) {
            p.max_parallel = std::max(p.max_parallel, c[i][j]);
            if (i == j && c[i][i]) p.has_loop = true;
            if (i != j && c[i][j] && c[j][i]) p.has_2cycle = true;
        }
    p.has_double = p.max_parallel >= 2;
    return p;
}

namespace {

using Counts = std::vector<std::vector<int>>;

void recolor(std::vector<int>& color, const std::vector<std::vector<int>>& keys) {
    std::vector<std::vector<int>> uniq = keys;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    for (size_t v = 0; v < color.size(); ++v)
        color[v] = static_cast<int>(std::lower_bound(uniq.begin(), uniq.end(), keys[v]) - uniq.begin());
}

int cell_count(const std::vector<int>& color) {
    return color.empty() ? 0 : *std::max_element(color.begin(), color.end()) + 1;
}

void refine(const Counts& a, std::vector<int>& color) {
    int n = static_cast<int>(a.size());
    int cells = cell_count(color);
    for (;;) {
        std::vector<std::vector<int>> keys(n);
        for (int v = 0; v < n; ++v) {
            std::vector<std::array<int, 3>> nb;
            for (int u = 0; u < n; ++u)
                if (u != v && (a[v][u] || a[u][v])) nb.push_back({color[u], a[v][u], a[u][v]});
            std::sort(nb.begin(), nb.end());
            auto& k = keys[v];
            k.push_back(color[v]);
            k.push_back(a[v][v]);
            for (auto& x : nb) k.insert(k.end(), x.begin(), x.end());
        }
        recolor(color, keys);
        int now = cell_count(color);
        if (now == cells) return;
        cells = now;
    }
}

std::vector<int> serialize(const Counts& a, const std::vector<int>& order, int upto) {
    std::vector<int> s;
    for (int m = 0; m < upto; ++m) {
        s.push_back(a[order[m]][order[m]]);
        for (int j = 0; j < m; ++j) {
            s.push_back(a[order[m]][order[j]]);
            s.push_back(a[order[j]][order[m]]);
        }
    }
    return s;
}

bool twins(const Counts& a, int u, int v) {
    int n = static_cast<int>(a.size());
    if (a[u][u] != a[v][v] || a[u][v] != a[v][u]) return false;
    for (int w = 0; w < n; ++w) {
        if (w == u || w == v) continue;
        if (a[u][w] != a[v][w] || a[w][u] != a[w][v]) return false;
    }
    return true;
}

struct Search {
    const Counts& a;
    int n;
    std::vector<int> best;
    std::vector<int> best_order;
    bool have = false;

    void run(std::vector<int> color) {
        refine(a, color);
        std::vector<int> size(n, 0);
        for (int c : color) ++size[c];
        int cells = cell_count(color);
        std::vector<int> order(n);
        {
            std::vector<int> start(cells + 1, 0);
            for (int c = 0; c < cells; ++c) start[c + 1] = start[c] + size[c];
            std::vector<int> fill = start;
            for (int v = 0; v < n; ++v) order[fill[color[v]]++] = v;
        }
        int prefix = 0;
        while (prefix < cells && size[prefix] == 1) ++prefix;
        if (have && prefix > 0) {
            auto s = serialize(a, order, prefix);
            auto cmp = std::lexicographical_compare_three_way(s.begin(), s.end(), best.begin(), best.begin() + s.size());
            if (cmp > 0) return;
        }
        if (cells == n) {
            auto s = serialize(a, order, n);
            if (!have || s < best) {
                best = std::move(s);
                best_order = order;
                have = true;
            }
            return;
        }
        int target = prefix;
        while (size[target] == 1) ++target;
        std::vector<int> members;
        for (int v = 0; v < n; ++v)
            if (color[v] == target) members.push_back(v);
        std::vector<int> reps;
        for (int v : members) {
            bool dup = false;
            for (int r : reps)
                if (twins(a, r, v)) {
                    dup = true;
                    break;
                }
            if (!dup) reps.push_back(v);
        }
        for (int v : reps) {
            std::vector<int> next(n);
            for (int u = 0; u < n; ++u) next[u] = 2 * color[u] + ((u == v) ? 0 : 1);
            std::vector<std::vector<int>> keys(n);
            for (int u = 0; u < n; ++u) keys[u] = {next[u]};
            recolor(next, keys);
            run(std::move(next));
        }
    }
};

std::string encode(int n, const std::vector<int>& s) {
    std::string key = std::to_string(n) + ":";
    for (int x : s) {
        if (x >= 0 && x < 26)
            key.push_back(static_cast<char>('a' + x));
        else
            key += "{" + std::to_string(x) + "}";
    }
    return key;
}

} // namespace

std::string canonical_key_counts(const Counts& a, std::vector<int>* order) {
    int n = static_cast<int>(a.size());
    Search s{a, n, {}, {}, false};
    s.run(std::vector<int>(n, 0));
    if (order) *order = s.best_order;
    return encode(n, s.best);
}

CanonicalKey canonical_key(const Quiver& q) {
    std::vector<int> order;
    CanonicalKey k;
    k.key = canonical_key_counts(q.counts(), &order);
    k.witness.assign(q.n(), 0);
    for (int pos = 0; pos < q.n(); ++pos) k.witness[order[pos]] = pos + 1;
    return k;
}

Restriction restrict_quiver(const Quiver& q, const std::vector<int>& vertices) {
    std::set<int> vs(vertices.begin(), vertices.end());
    std::vector<int> newid(q.n() + 1, 0);
    Restriction r;
    for (int v : vs) {
        if (v < 1 || v > q.n()) fail("InvalidVertex", "vertex " + std::to_string(v) + " out of range");
        r.vertex_map.push_back(v);
        newid[v] = static_cast<int>(r.vertex_map.size());
    }
    std::vector<Arrow> arrows;
    for (const Arrow& a : q.arrows())
        if (newid[a.s] && newid[a.t]) arrows.push_back({a.id, newid[a.s], newid[a.t]});
    r.quiver = Quiver(static_cast<int>(vs.size()), std::move(arrows));
    return r;
}

Quiver permute_quiver(const Quiver& q, const std::vector<int>& perm) {
    std::vector<Arrow> arrows;
    for (const Arrow& a : q.arrows()) arrows.push_back({a.id, perm[a.s - 1], perm[a.t - 1]});
    return Quiver(q.n(), std::move(arrows));
}

std::vector<std::vector<int>> components(const Quiver& q) {
    std::vector<int> parent(q.n() + 1);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> root = [&](int x) { return parent[x] == x ? x : parent[x] = root(parent[x]); };
    for (const Arrow& a : q.arrows()) parent[root(a.s)] = root(a.t);
    std::map<int, std::vector<int>> groups;
    for (int v = 1; v <= q.n(); ++v) groups[root(v)].push_back(v);
    std::vector<std::vector<int>> out;
    for (auto& [r, vs] : groups) out.push_back(vs);
    std::sort(out.begin(), out.end());
    return out;
}

bool is_connected(const Quiver& q) { return components(q).size() <= 1; }

} // namespace qpw
