#include "qpw/classify.hpp"

#include "qpw/catalog.hpp"
#include "qpw/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <unordered_map>

namespace qpw {

namespace {

std::vector<std::vector<int>> counts_of(const BMatrix& b) {
    int n = static_cast<int>(b.size());
    std::vector<std::vector<int>> c(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (b[j][i] > 0) c[i][j] = b[j][i];
    return c;
}

int max_parallel(const BMatrix& b) {
    int m = 0;
    for (const auto& row : b)
        for (int x : row) m = std::max(m, std::abs(x));
    return m;
}

int rank_of(const std::string& verdict) {
    if (verdict == "Jacobi-wild") return 3;
    if (verdict == "Jacobi-irregular") return 2;
    if (verdict == "Jacobi-tame") return 1;
    return 0;
}

Classification classify_connected(const Quiver& q, int cap) {
    Classification c;
    int n = q.n();
    if (n <= 2) {
        int m = n == 2 ? std::abs(to_b_matrix(q)[0][1]) : 0;
        c.class_size = 1;
        if (m <= 1) {
            c.verdict = "representation-finite";
            c.reason = "Dynkin";
        } else if (m == 2) {
            c.verdict = "Jacobi-tame";
            c.reason = "surface-or-E-type";
        } else {
            c.verdict = "Jacobi-wild";
            c.reason = "K_m";
        }
        return c;
    }
    MutationClassReport r = mutation_class(q, cap);
    if (!r.finite) {
        c.verdict = "Jacobi-wild";
        c.reason = "infinite-type";
        c.witness = r.witness;
        c.has_witness = true;
        return c;
    }
    c.class_size = r.size();
    auto member = [&](const Quiver& rep) { return rep.n() == n && r.contains(canonical_key(rep).key); };
    bool dynkin = member(dynkin_quiver('A', n)) || (n >= 4 && member(dynkin_quiver('D', n))) ||
                  (n >= 6 && n <= 8 && member(dynkin_quiver('E', n)));
    if (dynkin) {
        c.verdict = "representation-finite";
        c.reason = "Dynkin";
        return c;
    }
    for (const std::string& name : {"X6", "X7"})
        if (member(catalog(name).quiver)) {
            c.verdict = "Jacobi-wild";
            c.reason = name;
            return c;
        }
    for (const std::string& name : {"T1", "T2"})
        if (member(catalog(name).quiver)) {
            c.verdict = "Jacobi-irregular";
            c.reason = name;
            return c;
        }
    c.verdict = "Jacobi-tame";
    c.reason = "surface-or-E-type";
    return c;
}

} // namespace

bool MutationClassReport::contains(const std::string& key) const {
    return std::find(keys.begin(), keys.end(), key) != keys.end();
}

MutationClassReport mutation_class(const Quiver& q, int cap) {
    if (!is_connected(q)) fail("NotConnected", "mutation_class needs a connected quiver");
    MutationClassReport r;
    r.cap = cap;
    BMatrix start = to_b_matrix(q);
    int n = q.n();
    if (n >= 3 && max_parallel(start) >= 3) return r;

    std::unordered_map<std::string, std::vector<int>> seen;
    std::deque<std::pair<BMatrix, std::vector<int>>> queue;
    std::string k0 = canonical_key_counts(counts_of(start));
    seen.emplace(k0, std::vector<int>{});
    r.keys.push_back(k0);
    r.representatives.push_back(start);
    queue.emplace_back(start, std::vector<int>{});
    while (!queue.empty()) {
        auto [b, path] = std::move(queue.front());
        queue.pop_front();
        for (int k = 1; k <= n; ++k) {
            if (!path.empty() && path.back() == k) continue;
            BMatrix nb = mutate_matrix(b, k);
            std::vector<int> npath = path;
            npath.push_back(k);
            if (n >= 3 && max_parallel(nb) >= 3) {
                r.finite = false;
                r.witness = npath;
                r.keys.clear();
                r.representatives.clear();
                return r;
            }
            std::string key = canonical_key_counts(counts_of(nb));
            if (seen.count(key)) continue;
            if (static_cast<int>(r.keys.size()) >= cap)
                fail("CapExceeded", "mutation class has more than " + std::to_string(cap) + " quivers");
            seen.emplace(key, npath);
            r.keys.push_back(key);
            r.representatives.push_back(nb);
            queue.emplace_back(std::move(nb), std::move(npath));
        }
    }
    r.finite = true;
    return r;
}

FiniteTypeReport is_finite_mutation_type(const Quiver& q, int cap) {
    FiniteTypeReport out;
    out.finite = true;
    for (const auto& comp : components(q)) {
        Restriction res = restrict_quiver(q, comp);
        const Quiver& c = res.quiver;
        if (c.n() <= 2) {
            out.class_size += 1;
            continue;
        }
        MutationClassReport r = mutation_class(c, cap);
        if (!r.finite) {
            out.finite = false;
            out.witness.clear();
            for (int k : r.witness) out.witness.push_back(res.vertex_map[k - 1]);
            out.class_size = 0;
            return out;
        }
        out.class_size += r.size();
    }
    return out;
}

Classification classify(const Quiver& q, int cap) {
    if (!q.two_acyclic()) fail("NotTwoAcyclic", "quiver has a loop or a 2-cycle");
    auto comps = components(q);
    if (comps.size() == 1) return classify_connected(q, cap);
    Classification worst;
    worst.per_component = true;
    int worst_rank = -1;
    for (const auto& comp : comps) {
        Restriction res = restrict_quiver(q, comp);
        Classification c = classify_connected(res.quiver, cap);
        for (int& k : c.witness) k = res.vertex_map[k - 1];
        if (rank_of(c.verdict) > worst_rank) {
            worst_rank = rank_of(c.verdict);
            worst.verdict = c.verdict;
            worst.reason = c.reason;
            worst.class_size = c.class_size;
            worst.witness = c.witness;
            worst.has_witness = c.has_witness;
        }
        worst.components.push_back(std::move(c));
    }
    return worst;
}

} // namespace qpw
