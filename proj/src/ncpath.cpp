#include "qpw/ncpath.hpp"

#include "qpw/errors.hpp"

#include <algorithm>
#include <set>

namespace qpw {

int source(const Quiver& q, const Path& p) { return p.trivial() ? p.idem : q.arrow(p.arrows.back()).s; }

int target(const Quiver& q, const Path& p) { return p.trivial() ? p.idem : q.arrow(p.arrows.front()).t; }

bool is_cycle(const Quiver& q, const Path& p) { return !p.trivial() && source(q, p) == target(q, p); }

Path compose(const Quiver& q, const Path& p, const Path& r) {
    if (source(q, p) != target(q, r))
        fail("NotComposable", "s(" + path_str(q, p) + ") != t(" + path_str(q, r) + ")");
    if (p.trivial()) return r;
    if (r.trivial()) return p;
    Path out = p;
    out.arrows.insert(out.arrows.end(), r.arrows.begin(), r.arrows.end());
    return out;
}

Path cycle_rotation_class(const Quiver& q, const Path& c) {
    if (!is_cycle(q, c)) fail("NotACycle", path_str(q, c) + " is not a cycle");
    Path best = c;
    Path rot = c;
    for (int i = 1; i < c.length(); ++i) {
        std::rotate(rot.arrows.begin(), rot.arrows.begin() + 1, rot.arrows.end());
        if (rot.arrows < best.arrows) best = rot;
    }
    return best;
}

Path path_from_ids(const Quiver& q, const std::vector<std::string>& ids) {
    Path p;
    for (const auto& id : ids) p.arrows.push_back(q.index_of(id));
    for (size_t i = 0; i + 1 < p.arrows.size(); ++i)
        if (q.arrow(p.arrows[i]).s != q.arrow(p.arrows[i + 1]).t)
            fail("NotComposable", "s(" + ids[i] + ") != t(" + ids[i + 1] + ")");
    return p;
}

std::vector<std::string> path_ids(const Quiver& q, const Path& p) {
    std::vector<std::string> out;
    for (int a : p.arrows) out.push_back(q.arrow(a).id);
    return out;
}

std::string path_str(const Quiver& q, const Path& p) {
    if (p.trivial()) return "e" + std::to_string(p.idem);
    std::string s;
    for (int a : p.arrows) {
        if (!s.empty()) s += " ";
        s += q.arrow(a).id;
    }
    return s;
}

namespace {

void walk(const Quiver& q, const std::vector<std::vector<int>>& out, int v, int to, int left, std::vector<int>& stack,
          std::vector<Path>& res) {
    if (left == 0) {
        if (v == to) res.push_back(Path::of(std::vector<int>(stack.rbegin(), stack.rend())));
        return;
    }
    for (int a : out[v]) {
        stack.push_back(a);
        walk(q, out, q.arrow(a).t, to, left - 1, stack, res);
        stack.pop_back();
    }
}

std::vector<std::vector<int>> out_arrows(const Quiver& q) {
    std::vector<std::vector<int>> out(q.n() + 1);
    for (int a = 0; a < q.arrow_count(); ++a) out[q.arrow(a).s].push_back(a);
    return out;
}

} // namespace

std::vector<Path> paths_between(const Quiver& q, int from, int to, int length) {
    std::vector<Path> res;
    if (length == 0) {
        if (from == to) res.push_back(Path::trivial_at(from));
        return res;
    }
    auto out = out_arrows(q);
    std::vector<int> stack;
    walk(q, out, from, to, length, stack, res);
    std::sort(res.begin(), res.end());
    return res;
}

std::vector<Path> paths_of_length(const Quiver& q, int length) {
    std::vector<Path> res;
    for (int v = 1; v <= q.n(); ++v)
        for (int w = 1; w <= q.n(); ++w) {
            auto p = paths_between(q, v, w, length);
            res.insert(res.end(), p.begin(), p.end());
        }
    std::sort(res.begin(), res.end());
    return res;
}

void NCElement::add(const Path& p, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms.find(p);
    if (it == terms.end()) {
        terms.emplace(p, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
}

int NCElement::short_degree() const { return terms.empty() ? kInfinity : terms.begin()->first.length(); }

int NCElement::long_degree() const { return terms.empty() ? -1 : terms.rbegin()->first.length(); }

NCElement NCElement::degree_part(int d) const {
    NCElement out;
    out.trust = trust;
    out.exact = exact;
    for (const auto& [p, c] : terms)
        if (p.length() == d) out.terms.emplace(p, c);
    return out;
}

void NCElement::truncate(int n) {
    if (n < trust) trust = n;
    for (auto it = terms.begin(); it != terms.end();) {
        if (it->first.length() > trust) {
            exact = false;
            it = terms.erase(it);
        } else {
            ++it;
        }
    }
}

NCElement NCElement::single(const Path& p, const Scalar& c, int trust) {
    NCElement e;
    e.trust = trust;
    e.add(p, c);
    return e;
}

NCElement operator+(const NCElement& x, const NCElement& y) {
    NCElement out = x;
    out.exact = x.exact && y.exact;
    for (const auto& [p, c] : y.terms) out.add(p, c);
    out.truncate(std::min(x.trust, y.trust));
    return out;
}

NCElement operator-(const NCElement& x, const NCElement& y) {
    NCElement out = x;
    out.exact = x.exact && y.exact;
    for (const auto& [p, c] : y.terms) out.add(p, -c);
    out.truncate(std::min(x.trust, y.trust));
    return out;
}

NCElement operator*(const Scalar& c, const NCElement& x) {
    NCElement out;
    out.trust = x.trust;
    out.exact = x.exact;
    if (c.is_zero()) return out;
    for (const auto& [p, v] : x.terms) out.terms.emplace(p, c * v);
    return out;
}

NCElement multiply(const Quiver& q, const NCElement& x, const NCElement& y) {
    NCElement out;
    out.trust = std::min(x.trust, y.trust);
    out.exact = x.exact && y.exact;
    for (const auto& [p, a] : x.terms)
        for (const auto& [r, b] : y.terms) {
            if (source(q, p) != target(q, r)) continue;
            if (p.length() + r.length() > out.trust) {
                out.exact = false;
                continue;
            }
            out.add(compose(q, p, r), a * b);
        }
    return out;
}

bool is_potential(const Quiver& q, const NCElement& x) {
    for (const auto& [p, c] : x.terms)
        if (!is_cycle(q, p)) return false;
    return true;
}

NCElement cyclic_derivative(const Quiver& q, const NCElement& s, int arrow) {
    NCElement out;
    out.trust = s.trust - 1;
    out.exact = s.exact;
    for (const auto& [c, coeff] : s.terms) {
        if (!is_cycle(q, c)) continue;
        int m = c.length();
        for (int p = 0; p < m; ++p) {
            if (c.arrows[p] != arrow) continue;
            Path d;
            for (int i = p + 1; i < m; ++i) d.arrows.push_back(c.arrows[i]);
            for (int i = 0; i < p; ++i) d.arrows.push_back(c.arrows[i]);
            if (d.arrows.empty()) d.idem = q.arrow(arrow).s;
            out.add(d, coeff);
        }
    }
    return out;
}

NCElement second_cyclic_derivative(const Quiver& q, const NCElement& w, int b, int a) {
    NCElement out;
    out.trust = w.trust - 2;
    out.exact = w.exact;
    for (const auto& [c, coeff] : w.terms) {
        if (!is_cycle(q, c)) continue;
        int m = c.length();
        if (m < 2) continue;
        for (int p = 0; p < m; ++p) {
            if (c.arrows[p] != b || c.arrows[(p + 1) % m] != a) continue;
            Path d;
            for (int i = 2; i < m; ++i) d.arrows.push_back(c.arrows[(p + i) % m]);
            if (d.arrows.empty()) d.idem = q.arrow(b).t;
            out.add(d, coeff);
        }
    }
    return out;
}

NCElement cyclic_normalize(const Quiver& q, const NCElement& x) {
    NCElement out;
    out.trust = x.trust;
    out.exact = x.exact;
    for (const auto& [p, c] : x.terms) out.add(is_cycle(q, p) ? cycle_rotation_class(q, p) : p, c);
    return out;
}

bool rotationally_disjoint(const Quiver& q, const NCElement& s1, const NCElement& s2) {
    if (!s1.exact || !s2.exact) fail("NotExact", "rotational disjointness needs exact potentials");
    std::set<Path> classes;
    for (const auto& [p, c] : cyclic_normalize(q, s1).terms) classes.insert(p);
    for (const auto& [p, c] : cyclic_normalize(q, s2).terms)
        if (classes.count(p)) return false;
    return true;
}

Substitution Substitution::identity(const Quiver& q, int trust) {
    Substitution phi;
    for (int a = 0; a < q.arrow_count(); ++a) phi.images.push_back(NCElement::single(Path::of({a}), Scalar(1), trust));
    return phi;
}

namespace {

struct Expander {
    const Quiver& q;
    const std::vector<std::vector<std::pair<const Path*, const Scalar*>>>& img;
    const std::vector<int>& shorts;
    NCElement& out;
    const std::vector<int>* word = nullptr;
    std::vector<int> tail_short;

    void expand(const std::vector<int>& w, const Scalar& coeff) {
        word = &w;
        int m = static_cast<int>(w.size());
        tail_short.assign(m + 1, 0);
        for (int i = m - 1; i >= 0; --i) {
            int s = shorts[w[i]];
            tail_short[i] = (s == kInfinity || tail_short[i + 1] == kInfinity) ? kInfinity : tail_short[i + 1] + s;
        }
        if (tail_short[0] == kInfinity) return;
        Path acc;
        rec(0, acc, coeff);
    }

    void rec(int i, Path& acc, const Scalar& coeff) {
        const auto& w = *word;
        if (i == static_cast<int>(w.size())) {
            out.add(acc, coeff);
            return;
        }
        for (const auto& [p, c] : img[w[i]]) {
            if (acc.length() + p->length() + tail_short[i + 1] > out.trust) {
                out.exact = false;
                continue;
            }
            size_t before = acc.arrows.size();
            acc.arrows.insert(acc.arrows.end(), p->arrows.begin(), p->arrows.end());
            rec(i + 1, acc, coeff * *c);
            acc.arrows.resize(before);
        }
    }
};

} // namespace

NCElement apply_substitution(const Quiver& q, const Substitution& phi, const NCElement& x) {
    if (static_cast<int>(phi.images.size()) != q.arrow_count())
        fail("EndpointMismatch", "substitution does not cover every arrow");
    NCElement out;
    out.trust = x.trust;
    out.exact = x.exact;
    std::vector<std::vector<std::pair<const Path*, const Scalar*>>> img(q.arrow_count());
    std::vector<int> shorts(q.arrow_count());
    for (int a = 0; a < q.arrow_count(); ++a) {
        const NCElement& e = phi.images[a];
        out.trust = std::min(out.trust, e.trust);
        if (!e.exact) out.exact = false;
        for (const auto& [p, c] : e.terms) {
            if (p.trivial() || source(q, p) != q.arrow(a).s || target(q, p) != q.arrow(a).t)
                fail("EndpointMismatch", "image of " + q.arrow(a).id + " is not parallel to it");
            img[a].push_back({&p, &c});
        }
        shorts[a] = e.short_degree();
    }
    Expander ex{q, img, shorts, out, nullptr, {}};
    for (const auto& [p, c] : x.terms) {
        if (p.trivial()) {
            out.add(p, c);
            continue;
        }
        if (p.length() > out.trust) {
            out.exact = false;
            continue;
        }
        ex.expand(p.arrows, c);
    }
    return out;
}

Substitution compose_substitutions(const Quiver& q, const Substitution& phi, const Substitution& psi) {
    Substitution out;
    for (const auto& img : psi.images) out.images.push_back(apply_substitution(q, phi, img));
    return out;
}

bool is_unitriangular(const Quiver& q, const Substitution& phi) {
    for (int a = 0; a < q.arrow_count(); ++a) {
        const NCElement& e = phi.images[a];
        for (const auto& [p, c] : e.terms) {
            if (p.length() > 1) break;
            if (p.length() == 0) return false;
            if (p.arrows[0] == a ? !c.is_one() : true) return false;
        }
        auto it = e.terms.find(Path::of({a}));
        if (it == e.terms.end()) return false;
    }
    return true;
}

int depth(const Quiver& q, const Substitution& phi) {
    if (!is_unitriangular(q, phi)) fail("NotUnitriangular", "linear part of the substitution is not the identity");
    int d = kInfinity;
    for (int a = 0; a < q.arrow_count(); ++a) {
        NCElement diff = phi.images[a];
        diff.add(Path::of({a}), Scalar(-1));
        int s = diff.short_degree();
        if (s != kInfinity) d = std::min(d, s - 1);
    }
    return d;
}

NCElement deformation_family(const NCElement& s, const Scalar& lambda) {
    NCElement out;
    out.trust = s.trust;
    out.exact = s.exact;
    int sh = s.short_degree();
    for (const auto& [p, c] : s.terms) {
        int e = p.length() - sh;
        if (lambda.is_zero() && e > 0) continue;
        out.add(p, c * lambda.pow(e));
    }
    return out;
}

} // namespace qpw
